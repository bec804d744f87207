use std::collections::BTreeMap;
use std::sync::{mpsc, Arc, Mutex};
use std::thread;

use facthom_core::algebras::GradedAlgebra;
use facthom_core::complexes::{BettiTable, Validity};
use facthom_core::free_config::{cardinality_layer, commutative_tensoring_check, filtration_report, free_check, generator_space};
use facthom_core::koszul::{bar_coalgebra, koszul_dual, pkd_check};
use facthom_core::manifolds::{evaluate_expr, excision_check, ManifoldExpr};
use facthom_core::{CheckReport, Error, Field, Span};
use serde_json::{json, Value};

/// What to compute.
#[derive(Clone, Debug)]
pub enum Task {
    Facthom { expr: ManifoldExpr, max_deg: usize },
    Excision { algebra: Arc<GradedAlgebra>, max_deg: usize },
    Layers { algebra: Arc<GradedAlgebra>, top: u32 },
    Koszul { algebra: Arc<GradedAlgebra>, max_weight: u32 },
    Free { field: Field, dim: usize, deg: i64, max_weight: u32, max_deg: usize },
    Sym { field: Field, dim: usize, deg: i64, max_weight: u32, max_deg: usize },
    Pkd { algebra: Arc<GradedAlgebra>, max_weight: u32 },
}

impl Task {
    fn is_check(&self) -> bool {
        !matches!(self, Task::Facthom { .. } | Task::Koszul { .. })
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    /// Echo of the request, as given.
    pub request: Value,
    pub title: String,
    pub task: Task,
    pub json: bool,
    /// Source location for jobs coming from a program.
    pub span: Option<Span>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    CheckFailed,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CheckFailed => "check-failed",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Metadata {
    pub field: String,
    pub max_deg: Option<usize>,
    pub max_weight: Option<u32>,
    pub safe_degree: Option<i64>,
    pub exact_weights: Vec<u32>,
}

impl Metadata {
    fn from_validity(field: Field, max_deg: Option<usize>, v: &Validity) -> Self {
        Metadata {
            field: field.to_string(),
            max_deg,
            max_weight: v.max_weight,
            safe_degree: v.safe_degree,
            exact_weights: v.exact_weights.iter().copied().collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "maxdeg": self.max_deg,
            "maxweight": self.max_weight,
            "safe_degree": self.safe_degree,
            "exact_weights": self.exact_weights,
        })
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Betti(BettiTable),
    Tables(Vec<(String, BettiTable)>),
    Report { report: CheckReport, tables: Vec<(String, BettiTable)> },
}

impl Payload {
    pub fn to_json(&self) -> Value {
        let tables = |ts: &[(String, BettiTable)]| -> Value {
            ts.iter()
                .map(|(name, t)| json!({ "name": name, "betti": t.to_json_value()["betti"] }))
                .collect()
        };
        match self {
            Payload::Betti(t) => t.to_json_value(),
            Payload::Tables(ts) => json!({ "tables": tables(ts) }),
            Payload::Report { report, tables: ts } => {
                let mut v = report.to_json_value();
                if !ts.is_empty() {
                    v["tables"] = tables(ts);
                }
                v
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobResult {
    pub request: Value,
    pub title: String,
    pub json: bool,
    pub metadata: Metadata,
    pub status: Status,
    pub payload: Option<Payload>,
    pub error: Option<(String, Option<Span>)>,
}

impl JobResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "request": self.request,
            "metadata": self.metadata.to_json(),
            "status": self.status.as_str(),
        });
        if let Some(p) = &self.payload {
            v["payload"] = p.to_json();
        }
        if let Some((message, span)) = &self.error {
            v["error"] = json!({
                "message": message,
                "span": span.map(|s| json!({ "line": s.line, "column": s.column, "len": s.len })),
            });
        }
        v
    }
}

fn report_meta(field: Field, max_deg: Option<usize>, max_weight: Option<u32>) -> Metadata {
    Metadata {
        field: field.to_string(),
        max_deg,
        max_weight,
        ..Default::default()
    }
}

fn run_task(task: &Task) -> Result<(Metadata, Payload), Error> {
    Ok(match task {
        Task::Facthom { expr, max_deg } => {
            let h = evaluate_expr(expr, *max_deg)?;
            (Metadata::from_validity(expr.field(), Some(*max_deg), &h.validity), Payload::Betti(h.table))
        }
        Task::Excision { algebra, max_deg } => {
            let report = excision_check(algebra, *max_deg)?;
            let meta = report_meta(algebra.field(), Some(*max_deg), algebra.max_weight());
            (meta, Payload::Report { report, tables: Vec::new() })
        }
        Task::Layers { algebra, top } => {
            let report = filtration_report(algebra, *top as usize)?;
            let mut tables = Vec::new();
            if !algebra.reduced_basis().is_empty() {
                for k in 1..=*top as usize {
                    let t = cardinality_layer(algebra, k)?.filter(|_, w| w.is_some_and(|w| w <= *top));
                    tables.push((format!("layer {k}"), t));
                }
            }
            (report_meta(algebra.field(), None, Some(*top)), Payload::Report { report, tables })
        }
        Task::Koszul { algebra, max_weight } => {
            let bar = bar_coalgebra(algebra, *max_weight)?;
            let dual = koszul_dual(algebra, *max_weight)?;
            let mut dual_table = BettiTable::new();
            for i in 0..dual.dim() {
                dual_table.add(dual.degree(i), dual.weight(i), 1);
            }
            let tables = vec![("bar coalgebra".to_string(), bar.betti()), ("koszul dual".to_string(), dual_table)];
            (report_meta(algebra.field(), None, Some(*max_weight)), Payload::Tables(tables))
        }
        Task::Free { field, dim, deg, max_weight, max_deg } => {
            let report = free_check(*field, &generator_space(*dim, *deg), *max_weight, *max_deg)?;
            (report_meta(*field, Some(*max_deg), Some(*max_weight)), Payload::Report { report, tables: Vec::new() })
        }
        Task::Sym { field, dim, deg, max_weight, max_deg } => {
            let report = commutative_tensoring_check(*field, &generator_space(*dim, *deg), *max_weight, *max_deg)?;
            (report_meta(*field, Some(*max_deg), Some(*max_weight)), Payload::Report { report, tables: Vec::new() })
        }
        Task::Pkd { algebra, max_weight } => {
            let report = pkd_check(algebra, *max_weight)?;
            (report_meta(algebra.field(), None, Some(*max_weight)), Payload::Report { report, tables: Vec::new() })
        }
    })
}

impl Job {
    pub fn execute(&self) -> JobResult {
        let base = |metadata, status, payload, error| JobResult {
            request: self.request.clone(),
            title: self.title.clone(),
            json: self.json,
            metadata,
            status,
            payload,
            error,
        };
        match run_task(&self.task) {
            Ok((meta, payload)) => {
                let failed = matches!(&payload, Payload::Report { report, .. } if !report.passed());
                debug_assert!(!failed || self.task.is_check());
                let status = if failed { Status::CheckFailed } else { Status::Ok };
                base(meta, status, Some(payload), None)
            }
            Err(e) => {
                let span = e.span().or(self.span);
                base(Metadata::default(), Status::Error, None, Some((e.message(), span)))
            }
        }
    }
}

/// Runs jobs on `threads` workers and hands results to `sink` in job order,
/// each as soon as every earlier one is done.
pub fn execute_ordered(jobs: Vec<Job>, threads: usize, mut sink: impl FnMut(JobResult)) {
    if threads <= 1 || jobs.len() <= 1 {
        for j in &jobs {
            sink(j.execute());
        }
        return;
    }
    let queue = Mutex::new(jobs.into_iter().enumerate());
    let (tx, rx) = mpsc::channel();
    thread::scope(|s| {
        for _ in 0..threads {
            let tx = tx.clone();
            let queue = &queue;
            s.spawn(move || loop {
                let next = queue.lock().expect("queue lock").next();
                let Some((i, job)) = next else { break };
                if tx.send((i, job.execute())).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, r) in rx {
            pending.insert(i, r);
            while let Some(r) = pending.remove(&next) {
                sink(r);
                next += 1;
            }
        }
    });
}
