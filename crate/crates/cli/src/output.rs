//! Record types and their CSV/JSON/text renderings.

use serde::Serialize;
use tempiric::branching::restrict_decompose;
use tempiric::catalog::{builtin, BUILTIN_NAMES};
use tempiric::cktheory::{invert_window, mult_matrix, triangularity_in, Window};
use tempiric::diagram::{figure as build_figure, render_dot, render_svg, render_text};
use tempiric::rational::format_rational;
use tempiric::weights::{enumerate_ktypes_with_norms, vogan_norm, weyl_dim};
use tempiric::{Error, GroupDatum, Label, Rational, TempiricRep};

use crate::Failure;

fn csv<T: Serialize>(records: &[T], header: &[&str]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record(header)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Usage(e.to_string()))
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn table<T: Serialize>(records: &[T], header: &[&str], as_json: bool) -> Result<String, Failure> {
    if as_json {
        json(records)
    } else {
        csv(records, header)
    }
}

fn describe(datum: &GroupDatum) -> String {
    format!(
        "{}: K = {}, M = {}, branching = {}, 2rho_c = {:?}, equal_rank = {}\n",
        datum.name, datum.k, datum.m, datum.branching, datum.two_rho_c, datum.equal_rank
    )
}

pub fn catalog(datum: Option<&GroupDatum>, as_json: bool) -> Result<String, Failure> {
    match (datum, as_json) {
        (Some(d), true) => Ok(format!("{}\n", d.to_json())),
        (Some(d), false) => Ok(describe(d)),
        (None, true) => {
            let docs = BUILTIN_NAMES.iter().map(|n| builtin(n).map(|d| d.to_document())).collect::<Result<Vec<_>, Error>>()?;
            json(&docs)
        }
        (None, false) => {
            let mut out = String::new();
            for n in BUILTIN_NAMES {
                out.push_str(&describe(&builtin(n)?));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct KTypeRecord {
    label: String,
    norm: String,
    dim: u64,
}

pub fn ktypes(datum: &GroupDatum, bound: &Rational, as_json: bool) -> Result<String, Failure> {
    let records = enumerate_ktypes_with_norms(datum, bound)?
        .into_iter()
        .map(|(l, n)| Ok(KTypeRecord { dim: weyl_dim(&datum.k, &l)?, label: l.to_string(), norm: format_rational(&n) }))
        .collect::<Result<Vec<_>, Error>>()?;
    table(&records, &["label", "norm", "dim"], as_json)
}

#[derive(Serialize)]
struct BranchRecord {
    ktype: String,
    mtype: String,
    mult: i64,
    dim: u64,
}

pub fn branch(datum: &GroupDatum, label: Option<&str>, bound: Option<&Rational>, as_json: bool) -> Result<String, Failure> {
    let taus: Vec<Label> = match (label, bound) {
        (Some(text), _) => vec![datum.k.parse_label(text)?],
        (None, Some(b)) => enumerate_ktypes_with_norms(datum, b)?.into_iter().map(|(l, _)| l).collect(),
        (None, None) => return Err(Failure::Usage("one of --label or --bound is required".into())),
    };
    let mut records = Vec::new();
    for tau in taus {
        for (sigma, mult) in restrict_decompose(datum, &tau)?.iter() {
            records.push(BranchRecord {
                ktype: tau.to_string(),
                mtype: sigma.to_string(),
                mult,
                dim: weyl_dim(&datum.m, sigma)?,
            });
        }
    }
    table(&records, &["ktype", "mtype", "mult", "dim"], as_json)
}

#[derive(Serialize)]
struct RepRecord {
    kind: &'static str,
    parameters: String,
    minimal_ktype: String,
    split: bool,
    norm: String,
}

fn parameters(rep: &TempiricRep) -> String {
    match rep {
        TempiricRep::DiscreteSeries { hc, .. } => format!("hc={}", Label(hc.clone())),
        TempiricRep::PrincipalConstituent { class, .. } => format!("sigma={class}"),
    }
}

pub fn tempiric_table(datum: &GroupDatum, bound: &Rational, as_json: bool) -> Result<String, Failure> {
    let window = Window::new(datum, bound)?;
    let records = window
        .reps
        .iter()
        .map(|r| {
            Ok(RepRecord {
                kind: r.kind(),
                parameters: parameters(r),
                minimal_ktype: r.minimal_ktype().to_string(),
                split: r.is_split(),
                norm: format_rational(&vogan_norm(datum, r.minimal_ktype())?),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    table(&records, &["kind", "parameters", "minimal_ktype", "split", "norm"], as_json)
}

#[derive(Serialize)]
struct Inverse {
    /// `[i, j, v]` with `i` indexing `cols` and `j` indexing `rows`.
    entries: Vec<[i64; 3]>,
}

#[derive(Serialize)]
struct Refusal {
    reason: String,
    columns: Vec<String>,
}

#[derive(Serialize)]
struct MatrixDoc {
    group: String,
    bound: String,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<[i64; 3]>,
    resolution: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inverse: Option<Inverse>,
    #[serde(skip_serializing_if = "Option::is_none")]
    refusal: Option<Refusal>,
}

#[derive(Serialize)]
struct MatrixRecord {
    matrix: &'static str,
    i: Option<usize>,
    j: Option<usize>,
    row: String,
    col: String,
    value: Option<i64>,
    resolution: &'static str,
}

pub fn ck_matrix(datum: &GroupDatum, bound: &Rational, as_json: bool) -> Result<String, Failure> {
    let m = mult_matrix(datum, bound)?;
    let tri = triangularity_in(&m);
    let (inverse, refusal) = if !tri.passed {
        let reason = format!("not unit lower-triangular: {}", tri.counterexample.unwrap_or_default());
        (None, Some(Refusal { reason, columns: Vec::new() }))
    } else {
        match invert_window(&m) {
            Ok(inv) => {
                let entries = inv
                    .entries
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| {
                        row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, v)| [i as i64, j as i64, *v])
                    })
                    .collect();
                (Some(Inverse { entries }), None)
            }
            Err(Error::InversionRefused { columns }) => {
                let reason = "split columns are aggregate-only; their exact distribution is not determined".into();
                (None, Some(Refusal { reason, columns }))
            }
            Err(e) => return Err(e.into()),
        }
    };
    let rows: Vec<String> = m.rows.iter().map(|l| l.to_string()).collect();
    let cols: Vec<String> = m.cols.iter().map(|c| c.to_string()).collect();
    let entries: Vec<[i64; 3]> = m.triplets().map(|(i, j, v)| [i as i64, j as i64, v]).collect();
    if as_json {
        return json(&MatrixDoc {
            group: datum.name.clone(),
            bound: format_rational(bound),
            resolution: m.resolution.iter().map(|r| r.id()).collect(),
            rows,
            cols,
            entries,
            inverse,
            refusal,
        });
    }
    let mut records: Vec<MatrixRecord> = entries
        .iter()
        .map(|[i, j, v]| MatrixRecord {
            matrix: "mult",
            i: Some(*i as usize),
            j: Some(*j as usize),
            row: rows[*i as usize].clone(),
            col: cols[*j as usize].clone(),
            value: Some(*v),
            resolution: m.resolution[*j as usize].id(),
        })
        .collect();
    if let Some(inv) = &inverse {
        records.extend(inv.entries.iter().map(|[i, j, v]| MatrixRecord {
            matrix: "inverse",
            i: Some(*i as usize),
            j: Some(*j as usize),
            row: cols[*i as usize].clone(),
            col: rows[*j as usize].clone(),
            value: Some(*v),
            resolution: "exact",
        }));
    }
    if refusal.is_some() {
        records.extend(m.aggregate_columns().into_iter().map(|j| MatrixRecord {
            matrix: "refusal",
            i: None,
            j: Some(j),
            row: String::new(),
            col: cols[j].clone(),
            value: None,
            resolution: m.resolution[j].id(),
        }));
    }
    csv(&records, &["matrix", "i", "j", "row", "col", "value", "resolution"])
}

pub fn figure(datum: &GroupDatum, grid_bound: i64, format: &str) -> Result<String, Failure> {
    let spec = build_figure(datum, grid_bound)?;
    Ok(match format {
        "dot" => render_dot(&spec),
        "svg" => render_svg(&spec),
        _ => render_text(&spec),
    })
}
