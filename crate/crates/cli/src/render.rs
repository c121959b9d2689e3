use std::fmt::Write as _;
use std::ops::RangeInclusive;

use gpcolor::crc::{CrcReport, DedupRule};
use gpcolor::search::{SweepCell, SCHEMA_VERSION};
use gpcolor::{
    Coloring, Existence, ExistencePrediction, GpParams, Graph, MatrixId, ParameterMatrix, SearchReport, Verdict,
};
use serde::{Deserialize, Serialize};

use crate::Format;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn label(p: GpParams, v: usize) -> String {
    p.label(v).map(|l| l.to_string()).unwrap_or_else(|_| v.to_string())
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphExport {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

pub fn build(p: GpParams, g: &Graph, format: Format) -> String {
    let export = GraphExport {
        schema_version: SCHEMA_VERSION,
        n: p.n(),
        k: p.k(),
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        labels: (0..g.vertex_count()).map(|v| label(p, v)).collect(),
        edges: g.edges(),
    };
    match format {
        Format::Json => json(&export),
        Format::Csv => {
            let mut s = String::from("u,v,u_label,v_label\n");
            for (u, v) in &export.edges {
                let _ = writeln!(s, "{u},{v},{},{}", export.labels[*u], export.labels[*v]);
            }
            s
        }
        Format::Markdown => {
            let mut s = format!("# {p}\n\nvertices: {}\nedges: {}\n", export.vertex_count, export.edge_count);
            let _ = writeln!(s, "labeling: a_i -> i, b_i -> {} + i\n", p.n());
            s.push_str("```\n");
            s.push_str(&g.to_edge_list());
            s.push_str("```\n");
            s
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct VerdictOut {
    schema_version: u32,
    matrix: ParameterMatrix,
    perfect: bool,
    violations: Vec<gpcolor::Violation>,
}

pub fn verdict(p: GpParams, a: &ParameterMatrix, v: &Verdict, format: Format) -> String {
    let violations = match v {
        Verdict::Perfect => Vec::new(),
        Verdict::Violated(list) => list.clone(),
    };
    match format {
        Format::Json => json(&VerdictOut {
            schema_version: SCHEMA_VERSION,
            matrix: a.clone(),
            perfect: violations.is_empty(),
            violations,
        }),
        Format::Csv => {
            let mut s = String::from("vertex,label,color,expected,observed\n");
            for x in &violations {
                let _ =
                    writeln!(s, "{},{},{},{:?},{:?}", x.vertex, label(p, x.vertex), x.color, x.expected, x.observed);
            }
            s
        }
        Format::Markdown if violations.is_empty() => "ok\n".to_string(),
        Format::Markdown => {
            let mut s = format!("{} violating vertices against {a}\n\n", violations.len());
            s.push_str("| vertex | label | color | expected | observed |\n|---|---|---|---|---|\n");
            for x in &violations {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {:?} | {:?} |",
                    x.vertex,
                    label(p, x.vertex),
                    x.color,
                    x.expected,
                    x.observed
                );
            }
            s
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct DerivedOut {
    schema_version: u32,
    perfect: bool,
    matrix: Option<ParameterMatrix>,
    matrix_id: Option<MatrixId>,
}

pub fn derived(a: &Option<ParameterMatrix>, format: Format) -> String {
    let id = a.as_ref().and_then(MatrixId::identify);
    match format {
        Format::Json => {
            json(&DerivedOut { schema_version: SCHEMA_VERSION, perfect: a.is_some(), matrix: a.clone(), matrix_id: id })
        }
        Format::Csv => match a {
            Some(a) => format!("perfect,matrix,matrix_id\ntrue,\"{a}\",{}\n", id.map_or("", MatrixId::name)),
            None => "perfect,matrix,matrix_id\nfalse,,\n".to_string(),
        },
        Format::Markdown => match (a, id) {
            (Some(a), Some(id)) => format!("perfect with matrix {a} ({id} up to color swap)\n"),
            (Some(a), None) => format!("perfect with matrix {a}\n"),
            (None, _) => "not perfect\n".to_string(),
        },
    }
}

fn matrix_name(r: &SearchReport) -> String {
    match r.matrix_id {
        Some(id) if id.matrix() == r.matrix => id.to_string(),
        _ => r.matrix.to_string(),
    }
}

pub fn search(p: GpParams, reports: &[SearchReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => json(&reports[0]),
        Format::Json => json(&reports),
        Format::Csv => {
            let mut s = String::from("n,k,matrix,count,oracle_count,nodes_explored,elapsed_ms,witnesses\n");
            for r in reports {
                let witnesses: Vec<String> = r.witnesses.iter().map(Coloring::to_string).collect();
                let _ = writeln!(
                    s,
                    "{},{},\"{}\",{},{},{},{},{}",
                    p.n(),
                    p.k(),
                    r.matrix,
                    r.count,
                    r.oracle_count.map(|c| c.to_string()).unwrap_or_default(),
                    r.nodes_explored,
                    r.elapsed_ms,
                    witnesses.join(" ")
                );
            }
            s
        }
        Format::Markdown => {
            let mut s = format!("# {p}\n\n| matrix | count | oracle | nodes | ms |\n|---|---|---|---|---|\n");
            for r in reports {
                let oracle = match r.oracle_count {
                    Some(c) if c == r.count || r.existence_only && (c > 0) == (r.count > 0) => format!("{c} (agrees)"),
                    Some(c) => format!("{c} (MISMATCH)"),
                    None => "-".into(),
                };
                let count =
                    if r.existence_only { format!("{} (stopped at first)", r.count) } else { r.count.to_string() };
                let _ = writeln!(
                    s,
                    "| {} | {count} | {oracle} | {} | {} |",
                    matrix_name(r),
                    r.nodes_explored,
                    r.elapsed_ms
                );
            }
            for r in reports.iter().filter(|r| !r.witnesses.is_empty()) {
                let _ = writeln!(s, "\n{} witnesses:\n```", matrix_name(r));
                for w in &r.witnesses {
                    let _ = writeln!(s, "{w}");
                }
                s.push_str("```\n");
            }
            if reports.iter().any(|r| r.count == 0) {
                s.push_str("\nA zero count settles this instance only.\n");
            }
            s
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableCell {
    pub n: usize,
    pub matrix: MatrixId,
    pub admissible: bool,
    pub exists: bool,
    pub predicted: Existence,
    pub family: String,
    /// `None` when the closed form makes no prediction.
    pub agrees: Option<bool>,
    pub nodes_explored: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Coloring>,
}

impl TableCell {
    pub fn new(cell: SweepCell, prediction: ExistencePrediction) -> Self {
        let agrees = prediction.existence.as_bool().map(|p| p == cell.exists);
        Self {
            n: cell.n,
            matrix: cell.matrix,
            admissible: cell.admissible,
            exists: cell.exists,
            predicted: prediction.existence,
            family: prediction.family,
            agrees,
            nodes_explored: cell.nodes_explored,
            witness: cell.witness,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableOut {
    pub schema_version: u32,
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub cells: Vec<TableCell>,
    pub disagreements: usize,
}

pub fn table(k: usize, ns: &RangeInclusive<usize>, cells: &[TableCell], format: Format) -> String {
    let disagreements = cells.iter().filter(|c| c.agrees == Some(false)).count();
    match format {
        Format::Json => json(&TableOut {
            schema_version: SCHEMA_VERSION,
            k,
            n_min: *ns.start(),
            n_max: *ns.end(),
            cells: cells.to_vec(),
            disagreements,
        }),
        Format::Csv => {
            let mut s = String::from("n,k,matrix,admissible,exists,predicted,agrees,nodes_explored\n");
            for c in cells {
                let agrees = c.agrees.map(|b| b.to_string()).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{k},{},{},{},{},{agrees},{}",
                    c.n, c.matrix, c.admissible, c.exists, c.predicted, c.nodes_explored
                );
            }
            s
        }
        Format::Markdown => {
            let mut s = String::from("| |");
            for n in ns.clone() {
                let _ = write!(s, " GP({n},{k}) |");
            }
            s.push_str(" closed form |\n|---|");
            for _ in ns.clone() {
                s.push_str("---|");
            }
            s.push_str("---|\n");
            for id in MatrixId::ALL {
                let row: Vec<&TableCell> = cells.iter().filter(|c| c.matrix == id).collect();
                let _ = write!(s, "| {id} |");
                for c in &row {
                    let mark = match c.agrees {
                        Some(true) => String::new(),
                        Some(false) => format!(" (predicted {})", c.predicted),
                        None => " (?)".into(),
                    };
                    let verdict = if c.exists { "yes" } else { "no" };
                    let _ = write!(s, " {verdict}{mark} |");
                }
                let family = row.first().map_or("", |c| c.family.as_str());
                let _ = writeln!(s, " {family} |");
            }
            let _ = writeln!(s, "\ndisagreements: {disagreements}");
            s.push_str("Existence is settled per listed instance by exhaustive search, not proved for all n.\n");
            s
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CrcOut<'a> {
    #[serde(flatten)]
    pub report: &'a CrcReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rules_matching_expected: Option<Vec<DedupRule>>,
}

pub fn crc(report: &CrcReport, expect: Option<usize>, format: Format) -> String {
    let matching = expect.map(|e| report.rules_yielding(e));
    match format {
        Format::Json => json(&CrcOut { report, expected: expect, rules_matching_expected: matching }),
        Format::Csv => {
            let mut s = String::from("code,covering_radius,quotient,perfect\n");
            for c in &report.codes {
                let code: Vec<String> = c.code.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{},{},\"{}\",{}", code.join(" "), c.covering_radius, c.quotient, c.perfect);
            }
            s
        }
        Format::Markdown => {
            let p = GpParams::new(report.n, report.k).expect("report built from valid params");
            let mut s = format!("# completely regular codes of size {} in {p}\n\n", report.size);
            s.push_str("| code | labels | radius | quotient | perfect |\n|---|---|---|---|---|\n");
            for c in &report.codes {
                let code: Vec<String> = c.code.iter().map(ToString::to_string).collect();
                let labels: Vec<String> = c.code.iter().map(|&v| label(p, v)).collect();
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    code.join(" "),
                    labels.join(" "),
                    c.covering_radius,
                    c.quotient,
                    c.perfect
                );
            }
            s.push_str("\n| identification | count |\n|---|---|\n");
            for rc in &report.counts {
                let _ = writeln!(s, "| {} | {} |", rc.rule, rc.count);
            }
            let _ = writeln!(s, "\nperfect codes: {}", report.perfect_count);
            if let (Some(e), Some(rules)) = (expect, matching) {
                if rules.is_empty() {
                    let _ = writeln!(s, "no identification rule leaves exactly {e} codes");
                } else {
                    let names: Vec<String> = rules.iter().map(ToString::to_string).collect();
                    let _ = writeln!(s, "rules leaving exactly {e} codes: {}", names.join(", "));
                }
            }
            s
        }
    }
}
