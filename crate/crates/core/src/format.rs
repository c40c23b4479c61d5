//! JSON file formats. Every document carries a `kind` tag; see
//! `docs/formats.md` for the schemas.

use serde::{Deserialize, Serialize};

use crate::appstruct::{Pas, SubPasPair};
use crate::canonical::CanonicalForm;
use crate::error::{Error, Result};
use crate::structure::{BinRel, PairSet, PrStructure, PropId, RealId};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellJson {
    from: String,
    to: String,
    reals: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    props: Vec<String>,
    reals: Vec<String>,
    rho: Vec<CellJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    left: String,
    right: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PasJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    carrier: Vec<String>,
    table: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    carrier: Vec<String>,
    pairs: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubPasJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    sub: PasJson,
    sup: PasJson,
    /// Image of each sub-carrier element, by super-carrier name.
    embedding: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CanonicalJson {
    props: Vec<String>,
    antichain: Vec<Vec<(String, String)>>,
}

/// Any structure file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Pr(PrStructure),
    Pas(Pas),
    Bin(BinRel),
    SubPas(SubPasPair),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Pr(_) => "pr",
            Document::Pas(_) => "pas",
            Document::Bin(_) => "bin",
            Document::SubPas(_) => "subpas",
        }
    }
}

fn syntax(e: serde_json::Error) -> Error {
    // serde's message repeats the position at its end
    let msg = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
    Error::Malformed(format!("line {}, column {}: {msg}", e.line(), e.column()))
}

fn lookup(names: &[String], kind: &str, name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownName(format!("{kind} {name:?}")))
}

fn pr_json(s: &PrStructure) -> PrJson {
    let mut rho = Vec::new();
    for a in s.prop_ids() {
        for b in s.prop_ids() {
            let cell = s.cell(a, b);
            if !cell.is_empty() {
                rho.push(CellJson {
                    from: s.prop_name(a).to_string(),
                    to: s.prop_name(b).to_string(),
                    reals: cell.iter().map(|r| s.real_name(RealId(r)).to_string()).collect(),
                });
            }
        }
    }
    PrJson {
        kind: None,
        props: s.prop_names().to_vec(),
        reals: s.real_names().to_vec(),
        rho,
    }
}

fn pr_from_json(j: PrJson) -> Result<PrStructure> {
    let mut s = PrStructure::new(j.props, j.reals)?;
    let mut seen = PairSet::new(s.n_props());
    for cell in j.rho {
        let a = PropId(lookup(s.prop_names(), "proposition", &cell.from)?);
        let b = PropId(lookup(s.prop_names(), "proposition", &cell.to)?);
        if seen.contains(a, b) {
            return Err(Error::Malformed(format!(
                "cell ({}, {}) listed twice",
                cell.from, cell.to
            )));
        }
        seen.insert(a, b);
        for r in &cell.reals {
            let r = RealId(lookup(s.real_names(), "realizer", r)?);
            s.insert(a, b, r)?;
        }
    }
    Ok(s)
}

fn pas_json(p: &Pas) -> PasJson {
    let mut table = Vec::new();
    for x in p.elements() {
        for y in p.elements() {
            if let Some(v) = p.app(x, y) {
                table.push(EntryJson {
                    left: p.name(x).to_string(),
                    right: p.name(y).to_string(),
                    value: p.name(v).to_string(),
                });
            }
        }
    }
    PasJson {
        kind: None,
        carrier: p.names().to_vec(),
        table,
    }
}

fn pas_from_json(j: PasJson) -> Result<Pas> {
    let n = j.carrier.len();
    let mut table = vec![None; n * n];
    for e in &j.table {
        let x = lookup(&j.carrier, "element", &e.left)?;
        let y = lookup(&j.carrier, "element", &e.right)?;
        let v = lookup(&j.carrier, "element", &e.value)?;
        if table[x * n + y].replace(v).is_some() {
            return Err(Error::Malformed(format!(
                "application {} . {} listed twice",
                e.left, e.right
            )));
        }
    }
    Pas::new(j.carrier, table)
}

fn bin_json(r: &BinRel) -> BinJson {
    let name = |x: usize| r.carrier()[x].clone();
    BinJson {
        kind: None,
        carrier: r.carrier().to_vec(),
        pairs: r.pairs().into_iter().map(|(a, b)| (name(a), name(b))).collect(),
    }
}

fn bin_from_json(j: BinJson) -> Result<BinRel> {
    let mut pairs = Vec::with_capacity(j.pairs.len());
    for (a, b) in &j.pairs {
        pairs.push((
            lookup(&j.carrier, "element", a)?,
            lookup(&j.carrier, "element", b)?,
        ));
    }
    BinRel::from_pairs(j.carrier, &pairs)
}

fn subpas_json(p: &SubPasPair) -> SubPasJson {
    SubPasJson {
        kind: None,
        sub: pas_json(p.sub()),
        sup: pas_json(p.sup()),
        embedding: p.embedding().iter().map(|&x| p.sup().name(x).to_string()).collect(),
    }
}

fn subpas_from_json(j: SubPasJson) -> Result<SubPasPair> {
    for part in [&j.sup, &j.sub] {
        if part.kind.as_deref().is_some_and(|k| k != "pas") {
            return Err(Error::Malformed("sub and sup must be \"pas\" documents".into()));
        }
    }
    let sup = pas_from_json(j.sup)?;
    let sub = pas_from_json(j.sub)?;
    let embedding = j
        .embedding
        .iter()
        .map(|name| lookup(sup.names(), "element", name))
        .collect::<Result<Vec<_>>>()?;
    SubPasPair::new(sub, sup, embedding)
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

fn parse_as<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(syntax)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = parse_as(text)?;
    let kind = value
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::Malformed("missing string field \"kind\"".into()))?;
    match kind {
        "pr" => pr_from_json(parse_as(text)?).map(Document::Pr),
        "pas" => pas_from_json(parse_as(text)?).map(Document::Pas),
        "bin" => bin_from_json(parse_as(text)?).map(Document::Bin),
        "subpas" => subpas_from_json(parse_as(text)?).map(Document::SubPas),
        other => Err(Error::Malformed(format!("unknown kind {other:?}"))),
    }
}

pub fn document_to_json(doc: &Document) -> String {
    let kind = Some(doc.kind().to_string());
    match doc {
        Document::Pr(s) => pretty(&PrJson { kind, ..pr_json(s) }),
        Document::Pas(p) => pretty(&PasJson { kind, ..pas_json(p) }),
        Document::Bin(r) => pretty(&BinJson { kind, ..bin_json(r) }),
        Document::SubPas(p) => pretty(&SubPasJson { kind, ..subpas_json(p) }),
    }
}

fn expect_kind(doc: Document, kind: &str) -> Result<Document> {
    if doc.kind() == kind {
        Ok(doc)
    } else {
        Err(Error::Malformed(format!(
            "expected a {kind:?} document, found {:?}",
            doc.kind()
        )))
    }
}

pub fn parse_pr(text: &str) -> Result<PrStructure> {
    match expect_kind(parse_document(text)?, "pr")? {
        Document::Pr(s) => Ok(s),
        _ => unreachable!(),
    }
}

pub fn parse_pas(text: &str) -> Result<Pas> {
    match expect_kind(parse_document(text)?, "pas")? {
        Document::Pas(p) => Ok(p),
        _ => unreachable!(),
    }
}

pub fn parse_bin(text: &str) -> Result<BinRel> {
    match expect_kind(parse_document(text)?, "bin")? {
        Document::Bin(r) => Ok(r),
        _ => unreachable!(),
    }
}

pub fn pr_to_json(s: &PrStructure) -> String {
    document_to_json(&Document::Pr(s.clone()))
}

pub fn pas_to_json(p: &Pas) -> String {
    document_to_json(&Document::Pas(p.clone()))
}

pub fn bin_to_json(r: &BinRel) -> String {
    document_to_json(&Document::Bin(r.clone()))
}

/// Antichain members in canonical order, each with its pairs in row-major
/// proposition order.
pub fn canonical_to_json(c: &CanonicalForm) -> String {
    let props = c.props();
    let antichain = c
        .antichain()
        .iter()
        .map(|x| {
            x.iter()
                .map(|(a, b)| (props[a.0].clone(), props[b.0].clone()))
                .collect()
        })
        .collect();
    pretty(&CanonicalJson {
        props: props.to_vec(),
        antichain,
    })
}

pub fn parse_canonical(text: &str) -> Result<CanonicalForm> {
    let j: CanonicalJson = serde_json::from_str(text).map_err(syntax)?;
    let n = j.props.len();
    let mut antichain = Vec::with_capacity(j.antichain.len());
    for member in &j.antichain {
        let mut x = PairSet::new(n);
        for (a, b) in member {
            x.insert(
                PropId(lookup(&j.props, "proposition", a)?),
                PropId(lookup(&j.props, "proposition", b)?),
            );
        }
        antichain.push(x);
    }
    CanonicalForm::from_parts(j.props, antichain)
}

/// Pretty JSON with a trailing newline, for reports.
pub fn report_to_json<T: Serialize>(report: &T) -> String {
    pretty(report)
}
