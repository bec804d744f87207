use facthom_core::CheckReport;

use crate::jobs::{JobResult, Payload, Status};

#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub color: bool,
}

impl Style {
    /// Colour unless FACTHOM_COLOR=0.
    pub fn from_env() -> Self {
        Style {
            color: std::env::var("FACTHOM_COLOR").map_or(true, |v| v != "0"),
        }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    pub fn bold(&self, text: &str) -> String {
        self.paint("1", text)
    }

    pub fn green(&self, text: &str) -> String {
        self.paint("32", text)
    }

    pub fn red(&self, text: &str) -> String {
        self.paint("31", text)
    }

    pub fn dim(&self, text: &str) -> String {
        self.paint("2", text)
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".to_string(), T::to_string)
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn report_text(report: &CheckReport, style: Style) -> String {
    let verdict = if report.passed() { style.green("PASS") } else { style.red("FAIL") };
    let mut out = format!("  {}: {verdict}\n", report.name);
    for r in &report.rows {
        let tag = match (r.informational, r.passed) {
            (true, true) => style.dim("  holds"),
            (true, false) => style.dim("differs"),
            (false, true) => style.green("   pass"),
            (false, false) => style.red("   FAIL"),
        };
        out.push_str(&format!("    [{tag}] {}", r.label));
        if !r.detail.is_empty() {
            out.push_str(&format!("  {}", r.detail));
        }
        out.push('\n');
    }
    out
}

/// Human rendering: a header line, the metadata, then tables or report rows.
pub fn human(result: &JobResult, style: Style) -> String {
    let m = &result.metadata;
    let mut out = format!("{}\n", style.bold(&result.title));
    if result.status != Status::Error {
        let mut meta = format!("field {}, maxdeg {}, maxweight {}", m.field, opt(&m.max_deg), opt(&m.max_weight));
        if matches!(result.payload, Some(Payload::Betti(_))) {
            meta.push_str(&format!(", safe degree {}", opt(&m.safe_degree)));
            if !m.exact_weights.is_empty() {
                let ws: Vec<String> = m.exact_weights.iter().map(u32::to_string).collect();
                meta.push_str(&format!(", exact weights {}", ws.join(",")));
            }
        }
        out.push_str(&format!("  {}\n", style.dim(&meta)));
    }
    match (&result.payload, &result.error) {
        (Some(Payload::Betti(t)), _) => out.push_str(&indent(&t.to_text())),
        (Some(Payload::Tables(ts)), _) => {
            for (name, t) in ts {
                out.push_str(&format!("  {name}\n"));
                out.push_str(&indent(&t.to_text()));
            }
        }
        (Some(Payload::Report { report, tables }), _) => {
            out.push_str(&report_text(report, style));
            for (name, t) in tables {
                out.push_str(&format!("  {name}\n"));
                out.push_str(&indent(&t.to_text()));
            }
        }
        (None, Some((message, span))) => {
            let at = span.map_or(String::new(), |s| format!("{s}: "));
            out.push_str(&format!("  {} {at}{message}\n", style.red("error:")));
        }
        (None, None) => {}
    }
    out
}
