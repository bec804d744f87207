//! Acceptance criteria, one PASS/FAIL line each. Every equality is exact.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use facthom_core::algebras::{
    module_from, preset, random_algebra, tensor_algebras, GradedAlgebra, ModuleKind, PresetKind, RandomAlgebraSpec, Side,
};
use facthom_core::bar::{hochschild_complex, two_sided_bar, TruncationPolicy};
use facthom_core::complexes::{tensor, BettiTable, ChainComplex, ComputedBetti, GradedSpace, Piece};
use facthom_core::free_config::cardinality_layer_complex;
use facthom_core::koszul::{bar_coalgebra, bar_dg_coalgebra, cohochschild_complex};
use facthom_core::linalg::{ExactMatrix, Field};
use facthom_core::manifolds::dsl::parse;
use facthom_core::manifolds::{evaluate_expr, ordinary_homology_check, ManifoldExpr, Shape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn cli(args: &[String]) -> (u8, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("facthom".to_string()).chain(args.iter().cloned());
    let code = facthom_cli::run(argv, &mut out, &mut err);
    let text = String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err);
    (code, text)
}

fn cli_ok(args: &[&str]) -> Result<(), String> {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let (code, text) = cli(&args);
    if code == 0 {
        Ok(())
    } else {
        Err(format!("`facthom {}` exited {code}:\n{text}", args.join(" ")))
    }
}

fn fields() -> [Field; 2] {
    [Field::Rational, Field::prime(5).unwrap()]
}

fn field_flag(f: Field) -> String {
    f.to_string()
}

/// Random algebra shapes used by criteria 1 and 6: total dimension 1..=4,
/// alternating weighted and unweighted, mostly dimension 3 and 4.
fn random_shapes() -> Vec<(usize, bool, u64)> {
    (0..20u64)
        .map(|i| {
            let dim = [1, 2, 3, 4, 3, 4][i as usize % 6];
            (dim, i % 2 == 0, 1000 + i)
        })
        .collect()
}

fn random(field: Field, dim: usize, weighted: bool, seed: u64) -> GradedAlgebra {
    random_algebra(RandomAlgebraSpec { field, dim, weighted, max_degree: 1 }, seed).unwrap()
}

fn criterion_1() -> Outcome {
    let mut nontrivial = 0;
    for field in fields() {
        for (dim, weighted, seed) in random_shapes() {
            let (s, d) = (seed.to_string(), dim.to_string());
            let f = field_flag(field);
            let mut args = vec!["check", "excision", "--random", &s, "--dim", &d, "--field", &f, "--maxdeg", "4"];
            if weighted {
                args.push("--weighted");
            }
            cli_ok(&args)?;
            if random(field, dim, weighted, seed).products().iter().any(|(i, j, _)| *i != 0 && *j != 0) {
                nontrivial += 1;
            }
        }
    }
    let presets: [&[&str]; 4] = [
        &["--preset", "truncpoly", "--order", "3", "--maxweight", "4"],
        &["--preset", "exterior", "--dim", "2", "--deg", "0"],
        &["--preset", "sym", "--dim", "1", "--deg", "0", "--maxweight", "3"],
        &["--preset", "tensor", "--dim", "1", "--deg", "1", "--maxweight", "3"],
    ];
    for extra in presets {
        let mut args = vec!["check", "excision", "--maxdeg", "4"];
        args.extend_from_slice(extra);
        cli_ok(&args)?;
    }
    Ok(format!(
        "40 random algebras (20 over Q, 20 over Fp:5), {nontrivial} with a nonzero ideal product, plus 4 presets"
    ))
}

fn criterion_2() -> Outcome {
    for dim in ["1", "2"] {
        for deg in ["0", "1"] {
            cli_ok(&["check", "sym", "--dim", dim, "--deg", deg, "--maxweight", "4"])?;
        }
    }
    Ok("dim V in {1,2}, deg V in {0,1}, weights <= 4".into())
}

fn criterion_3() -> Outcome {
    for dim in ["1", "2"] {
        for deg in ["0", "1"] {
            cli_ok(&["check", "free", "--dim", dim, "--deg", deg, "--maxweight", "5"])?;
        }
    }
    Ok("dim V in {1,2}, deg V in {0,1}, weights <= 5".into())
}

fn criterion_4() -> Outcome {
    for (preset, dim) in [("tensor", "1"), ("squarezero", "1"), ("squarezero", "2"), ("sym", "1")] {
        cli_ok(&["layers", "--preset", preset, "--dim", dim, "--deg", "0", "--maxweight", "4"])?;
    }
    Ok("tensor(1,0), squarezero(1,0), squarezero(2,0), sym(1,0) up to weight 4".into())
}

fn criterion_5() -> Outcome {
    let mut runs = 0;
    for field in fields() {
        let f = field_flag(field);
        for dim in ["0", "1", "2"] {
            for deg in ["0", "1"] {
                cli_ok(&["check", "pkd", "--preset", "squarezero", "--dim", dim, "--deg", deg, "--maxweight", "4", "--field", &f])?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} square-zero algebras, dim V <= 2, deg V in {{0,1}}, weights <= 4, over Q and Fp:5"))
}

fn basis_table(a: &GradedAlgebra) -> BettiTable {
    let mut t = BettiTable::new();
    for i in 0..a.dim() {
        t.add(a.degree(i), a.weight(i), 1);
    }
    t
}

fn criterion_6() -> Outcome {
    // Interval unit law.
    for (k, (dim, weighted, seed)) in random_shapes().into_iter().enumerate() {
        let field = fields()[k % 2];
        let a = Arc::new(random(field, dim, weighted, seed));
        let r = Arc::new(module_from(ModuleKind::Regular(Side::Right), &a).map_err(|e| e.to_string())?);
        let l = Arc::new(module_from(ModuleKind::Regular(Side::Left), &a).map_err(|e| e.to_string())?);
        let h = evaluate_expr(&ManifoldExpr::interval(a.clone(), r, l).unwrap(), 4).map_err(|e| e.to_string())?;
        // Clip the expected table to the reported weight range.
        let expect = ComputedBetti::new(basis_table(&a), h.validity.clone()).table;
        if h.table != expect {
            return Err(format!("interval unit law, seed {seed}: {} vs {expect}", h.table));
        }
    }
    // Disjoint union against the circle of the tensor product algebra.
    let mut pairs = 0;
    for field in fields() {
        let algebras: Vec<Arc<GradedAlgebra>> = vec![
            Arc::new(preset(field, PresetKind::SquareZero { dim: 1, deg: 0 }, None).unwrap()),
            Arc::new(preset(field, PresetKind::Exterior { dim: 1, deg: 1 }, None).unwrap()),
            Arc::new(random(field, 2, false, 11)),
            Arc::new(random(field, 2, false, 12)),
        ];
        for a in &algebras {
            for b in &algebras {
                if a.is_weighted() != b.is_weighted() {
                    continue;
                }
                let ab = Arc::new(tensor_algebras(a, b).map_err(|e| e.to_string())?.algebra);
                let two = ManifoldExpr::disjoint(vec![ManifoldExpr::Circle(a.clone()), ManifoldExpr::Circle(b.clone())]).unwrap();
                let left = evaluate_expr(&two, 3).map_err(|e| e.to_string())?;
                let right = evaluate_expr(&ManifoldExpr::Circle(ab), 3).map_err(|e| e.to_string())?;
                let diff = left.diff(&right);
                if !diff.is_empty() {
                    return Err(format!("Künneth: {diff:?}"));
                }
                pairs += 1;
            }
        }
    }
    // Direct-sum case: C_*(M) ⊗ V against b_0(M)·H(V) + b_1(M)·H(V)[1].
    let mut shapes = 0;
    for seed in 0..5 {
        let v = random_complex(Field::Rational, seed);
        let hv = v.homology().map_err(|e| e.to_string())?;
        for (shape, b0, b1) in [
            (Shape::Interval, 1, 0),
            (Shape::Circle, 1, 1),
            (Shape::Disjoint(vec![Shape::Circle, Shape::Circle]), 2, 2),
        ] {
            let got = ordinary_homology_check(&v, &shape).map_err(|e| e.to_string())?;
            let mut expect = BettiTable::new();
            for (d, w, n) in hv.iter() {
                expect.add(d, w, b0 * n);
                expect.add(d + 1, w, b1 * n);
            }
            if got != expect {
                return Err(format!("direct sum on {shape}: {got} vs {expect}"));
            }
            shapes += 1;
        }
    }
    Ok(format!("20 interval unit laws, {pairs} disjoint pairs, {shapes} direct-sum cases"))
}

fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let trips: Vec<_> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter_map(|(r, c)| {
            let x: i64 = rng.gen_range(-3..=3);
            (x != 0 && rng.gen_bool(0.5)).then(|| (r, c, field.from_i64(x)))
        })
        .collect();
    ExactMatrix::from_triplets(field, rows, cols, trips).unwrap()
}

/// Two-step complex k^a → k^b → k^c with d₁∘d₂ = 0 built from a kernel basis.
fn random_complex(field: Field, seed: u64) -> ChainComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, c) = (rng.gen_range(1..=3), rng.gen_range(1..=4), rng.gen_range(1..=3));
    let d1 = random_matrix(field, a, b, &mut rng);
    let ker = d1.kernel_basis_sparse();
    let mut trips = Vec::new();
    for col in 0..c {
        for k in &ker {
            let s = field.from_i64(rng.gen_range(-2..=2));
            trips.extend(k.iter().map(|(r, x)| (*r, col, x * &s)));
        }
    }
    let d2 = ExactMatrix::from_triplets(field, b, c, trips).unwrap();
    let space = GradedSpace::from_pieces([(0, Piece::anonymous(a)), (1, Piece::anonymous(b)), (2, Piece::anonymous(c))]).unwrap();
    ChainComplex::new(field, space, [(1, d1), (2, d2)].into_iter().collect()).unwrap()
}

fn square_zero(name: &str, c: &ChainComplex) -> Result<(), String> {
    c.check_square_zero().map_err(|e| format!("{name}: {e}"))
}

fn criterion_7() -> Outcome {
    let err = |e: facthom_core::Error| e.to_string();
    // d∘d = 0 on every complex the artifact builds.
    let mut complexes = 0;
    let mut algebras: Vec<GradedAlgebra> = [
        PresetKind::SquareZero { dim: 2, deg: 1 },
        PresetKind::Tensor { dim: 1, deg: 0 },
        PresetKind::Sym { dim: 2, deg: 1 },
        PresetKind::Exterior { dim: 2, deg: 0 },
        PresetKind::TruncPoly { order: 3 },
    ]
    .into_iter()
    .map(|k| preset(Field::Rational, k, Some(3)).unwrap())
    .collect();
    algebras.extend((0..6).map(|s| random(Field::prime(5).unwrap(), 3, s % 2 == 0, 50 + s)));
    for a in &algebras {
        let a = Arc::new(a.clone());
        let trunc = TruncationPolicy::new(4);
        square_zero("cyclic bar", &hochschild_complex(&a, trunc).map_err(err)?.complex)?;
        let r = module_from(ModuleKind::Regular(Side::Right), &a).map_err(err)?;
        let l = module_from(ModuleKind::Regular(Side::Left), &a).map_err(err)?;
        square_zero("two-sided bar", &two_sided_bar(&r, &a, &l, trunc).map_err(err)?.complex)?;
        complexes += 2;
        if a.is_augmented() && a.is_weighted() {
            for k in 1..=3 {
                square_zero("layer", &cardinality_layer_complex(&a, k, Some(3)).map_err(err)?.complex)?;
            }
            square_zero("cobar of H(Bar)", &cohochschild_complex(&bar_coalgebra(&a, 3).map_err(err)?).map_err(err)?)?;
            square_zero("cobar of Bar", &cohochschild_complex(&bar_dg_coalgebra(&a, 3).map_err(err)?).map_err(err)?)?;
            complexes += 5;
        }
    }
    for s in 0..10 {
        let t = tensor(&random_complex(Field::Rational, s), &random_complex(Field::Rational, s + 100)).map_err(err)?;
        square_zero("tensor", &t)?;
        complexes += 1;
    }
    // Truncation safety: N against N + 2 on the exact region.
    let mut recomputed = 0;
    for a in &algebras {
        for n in 2..=4 {
            let small = hochschild_complex(a, TruncationPolicy::new(n)).map_err(err)?.homology().map_err(err)?;
            let big = hochschild_complex(a, TruncationPolicy::new(n + 2)).map_err(err)?.homology().map_err(err)?;
            if !small.diff(&big).is_empty() {
                return Err(format!("truncation N={n} vs N+2: {:?}", small.diff(&big)));
            }
            recomputed += 1;
        }
    }
    // rank + nullity on 200 random matrices.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let field = fields()[i % 2];
        let (r, c) = (rng.gen_range(0..=7), rng.gen_range(0..=7));
        let m = random_matrix(field, r, c, &mut rng);
        let ker = m.kernel_basis_sparse();
        if m.rank() + ker.len() != c || ker.iter().any(|v| !m.apply(v).is_empty()) {
            return Err(format!("rank/kernel identity fails on matrix {i}: {m:?}"));
        }
    }
    // Parser round-trip on the corpus.
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/programs");
    let mut files: Vec<_> = fs::read_dir(dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    files.sort();
    for p in &files {
        let src = fs::read_to_string(p).map_err(|e| e.to_string())?;
        let tree = parse(&src).map_err(err)?;
        let printed = tree.to_string();
        let again = parse(&printed).map_err(err)?;
        let same = tree.stmts.iter().map(|s| &s.0).eq(again.stmts.iter().map(|s| &s.0));
        if !same || again.to_string() != printed {
            return Err(format!("round trip fails on {}", p.display()));
        }
    }
    Ok(format!(
        "{complexes} complexes with d∘d = 0, {recomputed} truncation recomputations, 200 matrices, {} programs",
        files.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (1, "excision / Hochschild consistency", 60, criterion_1),
        (2, "commutative tensoring (sym)", 30, criterion_2),
        (3, "free-algebra configuration formula", 30, criterion_3),
        (4, "cardinality filtration layers", 30, criterion_4),
        (5, "Poincaré/Koszul duality at n = 1", 60, criterion_5),
        (6, "unit and monoidality laws", 10, criterion_6),
        (7, "infrastructure invariants", 30, criterion_7),
    ];
    let mut all = true;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let line = match (&outcome, in_time) {
            (Ok(detail), true) => format!("PASS criterion {n}: {name} [{took:.2?} / {budget}s] {detail}"),
            (Ok(detail), false) => format!("FAIL criterion {n}: {name} [{took:.2?} exceeds {budget}s] {detail}"),
            (Err(why), _) => format!("FAIL criterion {n}: {name} [{took:.2?}] {why}"),
        };
        all &= outcome.is_ok() && in_time;
        println!("{line}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
