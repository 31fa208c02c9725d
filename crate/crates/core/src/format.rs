//! Partition documents and their two on-disk forms: the line-oriented
//! listing (`Box(1) = {1,2,3} x {1,2,3} x {1}`) and a canonical JSON object.
//!
//! Text grammar, one item per line, blank lines ignored:
//!
//! ```text
//! # name: p25                     metadata (name, k, provenance)
//! Ambient = 5 x 5 x 5             optional; inferred from max coordinates
//! Box(1) = {1,2,3} x {1,2,3} x {1}
//! Label(1) = (1,2,2)              optional piercing vector of a box
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{IntermediatePartition, PiercingVector};
use crate::geometry::{Ambient, BoxFamily, DiscreteBox, GeometryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: box id {id} appears twice")]
    DuplicateId { line: usize, id: usize },
    #[error("box ids must run 1..={count} without gaps; {missing} is missing")]
    MissingId { count: usize, missing: usize },
    #[error("label for box {id}, which does not exist")]
    OrphanLabel { id: usize },
    #[error("labels given for some boxes but not box {id}")]
    PartialLabels { id: usize },
    #[error("document has no boxes")]
    Empty,
    #[error("structured document: {0}")]
    Json(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl DocumentMeta {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.k.is_none() && self.provenance.is_none()
    }
}

/// A family of boxes with 1-based ids (position + 1), optional per-box
/// labels and metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionDocument {
    pub family: BoxFamily,
    pub labels: Option<Vec<PiercingVector>>,
    pub meta: DocumentMeta,
}

impl PartitionDocument {
    pub fn new(family: BoxFamily) -> Self {
        Self { family, labels: None, meta: DocumentMeta::default() }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.meta.name = Some(name.into());
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.meta.k = Some(k);
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.meta.provenance = Some(provenance.into());
        self
    }

    pub fn from_intermediate(ip: &IntermediatePartition) -> Self {
        let family = ip.family();
        let labels = ip.parts().iter().map(|(_, l)| l.clone()).collect();
        Self { family, labels: Some(labels), meta: DocumentMeta::default() }
    }

    pub fn ambient(&self) -> &Ambient {
        self.family.ambient()
    }

    /// The labelled parts as an intermediate partition, when labels exist.
    pub fn to_intermediate(&self) -> Option<Result<IntermediatePartition, crate::constructions::ConstructionError>> {
        let labels = self.labels.as_ref()?;
        let parts = self.family.boxes().iter().cloned().zip(labels.iter().cloned()).collect();
        Some(IntermediatePartition::new(self.ambient().clone(), parts))
    }
}

/// Side per axis equal to the largest coordinate used.
fn inferred_sides(boxes: &[DiscreteBox]) -> Vec<usize> {
    let d = boxes.first().map_or(0, DiscreteBox::dim);
    (0..d)
        .map(|a| boxes.iter().map(|b| 64 - b.mask(a).leading_zeros() as usize).max().unwrap_or(0))
        .collect()
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Splits `Head(<id>) = rest` into `(id, rest)`.
fn split_item<'a>(line: &'a str, head: &str, lineno: usize) -> Result<Option<(usize, &'a str)>, FormatError> {
    let Some(rest) = line.strip_prefix(head) else { return Ok(None) };
    let rest = rest.trim_start();
    let Some(rest) = rest.strip_prefix('(') else { return Ok(None) };
    let (id, rest) = rest
        .split_once(')')
        .ok_or_else(|| syntax(lineno, format!("missing ')' after {head}(")))?;
    let id: i64 = id.trim().parse().map_err(|_| syntax(lineno, format!("bad id '{}'", id.trim())))?;
    if id < 1 {
        return Err(syntax(lineno, format!("ids start at 1, got {id}")));
    }
    let rest = rest
        .trim_start()
        .strip_prefix('=')
        .ok_or_else(|| syntax(lineno, "expected '='"))?;
    Ok(Some((id as usize, rest.trim())))
}

fn parse_int_list(body: &str, lineno: usize) -> Result<Vec<usize>, FormatError> {
    body.split(',')
        .map(|t| {
            let t = t.trim();
            let v: i64 = t.parse().map_err(|_| syntax(lineno, format!("bad integer '{t}'")))?;
            if v < 1 {
                return Err(syntax(lineno, format!("coordinates start at 1, got {v}")));
            }
            Ok(v as usize)
        })
        .collect()
}

fn parse_box(body: &str, lineno: usize) -> Result<DiscreteBox, FormatError> {
    let mut sets = Vec::new();
    for factor in body.split('x') {
        let inner = factor
            .trim()
            .strip_prefix('{')
            .and_then(|f| f.strip_suffix('}'))
            .ok_or_else(|| syntax(lineno, format!("factor '{}' is not of the form {{a,b,...}}", factor.trim())))?;
        sets.push(parse_int_list(inner, lineno)?);
    }
    DiscreteBox::from_sets(&sets).map_err(|e| syntax(lineno, e.to_string()))
}

/// Parses the listing format. Boxes are returned in id order.
pub fn parse_partition_text(text: &str) -> Result<PartitionDocument, FormatError> {
    let mut meta = DocumentMeta::default();
    let mut header: Option<Vec<usize>> = None;
    let mut boxes: BTreeMap<usize, DiscreteBox> = BTreeMap::new();
    let mut labels: BTreeMap<usize, PiercingVector> = BTreeMap::new();
    let mut dim: Option<(usize, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once(':') {
                let value = value.trim().to_string();
                match key.trim() {
                    "name" => meta.name = Some(value),
                    "provenance" => meta.provenance = Some(value),
                    "k" => meta.k = Some(value.parse().map_err(|_| syntax(lineno, format!("bad k '{value}'")))?),
                    _ => {}
                }
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("Ambient") {
            let rest = rest.trim_start().strip_prefix('=').ok_or_else(|| syntax(lineno, "expected 'Ambient = n1 x ... x nd'"))?;
            let sides = rest
                .split('x')
                .map(|t| parse_int_list(t, lineno).and_then(|v| match v[..] {
                    [n] => Ok(n),
                    _ => Err(syntax(lineno, "ambient sides are single integers")),
                }))
                .collect::<Result<Vec<_>, _>>()?;
            if header.replace(sides).is_some() {
                return Err(syntax(lineno, "ambient given twice"));
            }
            continue;
        }
        if let Some((id, body)) = split_item(line, "Box", lineno)? {
            let b = parse_box(body, lineno)?;
            match dim {
                None => dim = Some((b.dim(), lineno)),
                Some((d, first)) if d != b.dim() => {
                    return Err(syntax(lineno, format!("box has {} factors but line {first} has {d}", b.dim())))
                }
                _ => {}
            }
            if boxes.insert(id, b).is_some() {
                return Err(FormatError::DuplicateId { line: lineno, id });
            }
            continue;
        }
        if let Some((id, body)) = split_item(line, "Label", lineno)? {
            let inner = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| syntax(lineno, "label must look like (a,b,...)"))?;
            let label = PiercingVector::new(parse_int_list(inner, lineno)?).map_err(|e| syntax(lineno, e.to_string()))?;
            if labels.insert(id, label).is_some() {
                return Err(FormatError::DuplicateId { line: lineno, id });
            }
            continue;
        }
        return Err(syntax(lineno, format!("unrecognised line '{line}'")));
    }
    if boxes.is_empty() {
        return Err(FormatError::Empty);
    }
    let count = boxes.len();
    if let Some(missing) = (1..=count).find(|id| !boxes.contains_key(id)) {
        return Err(FormatError::MissingId { count, missing });
    }
    let boxes: Vec<DiscreteBox> = boxes.into_values().collect();
    let ambient = Ambient::new(header.unwrap_or_else(|| inferred_sides(&boxes)))?;
    let family = BoxFamily::new(ambient, boxes)?;
    let labels = if labels.is_empty() {
        None
    } else {
        if let Some(&id) = labels.keys().find(|&&id| id > count) {
            return Err(FormatError::OrphanLabel { id });
        }
        if let Some(id) = (1..=count).find(|id| !labels.contains_key(id)) {
            return Err(FormatError::PartialLabels { id });
        }
        Some(labels.into_values().collect())
    };
    Ok(PartitionDocument { family, labels, meta })
}

/// Writes the listing format. The `Ambient` header is emitted only when it
/// differs from what the boxes imply.
pub fn write_partition_text(doc: &PartitionDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.meta.name {
        let _ = writeln!(out, "# name: {name}");
    }
    if let Some(k) = doc.meta.k {
        let _ = writeln!(out, "# k: {k}");
    }
    if let Some(p) = &doc.meta.provenance {
        let _ = writeln!(out, "# provenance: {p}");
    }
    let sides = doc.ambient().sides();
    if inferred_sides(doc.family.boxes()) != sides {
        let s: Vec<String> = sides.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(out, "Ambient = {}", s.join(" x "));
    }
    for (i, b) in doc.family.boxes().iter().enumerate() {
        let _ = writeln!(out, "Box({}) = {}", i + 1, b);
    }
    if let Some(labels) = &doc.labels {
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "Label({}) = {}", i + 1, l);
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct Structured {
    ambient: Vec<usize>,
    boxes: Vec<Vec<Vec<usize>>>,
    labels: Option<Vec<Vec<usize>>>,
    meta: DocumentMeta,
}

/// Canonical single-line JSON: `{"ambient":[..],"boxes":[[[..],..],..],"labels":..,"meta":{..}}`.
pub fn write_partition_structured(doc: &PartitionDocument) -> String {
    let s = Structured {
        ambient: doc.ambient().sides().to_vec(),
        boxes: doc
            .family
            .boxes()
            .iter()
            .map(|b| (0..b.dim()).map(|a| b.factor(a)).collect())
            .collect(),
        labels: doc.labels.as_ref().map(|ls| ls.iter().map(|l| l.to_vec()).collect()),
        meta: doc.meta.clone(),
    };
    serde_json::to_string(&s).expect("plain data serializes")
}

pub fn parse_partition_structured(text: &str) -> Result<PartitionDocument, FormatError> {
    let s: Structured = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    if s.boxes.is_empty() {
        return Err(FormatError::Empty);
    }
    let ambient = Ambient::new(s.ambient)?;
    let boxes = s.boxes.iter().map(|sets| DiscreteBox::from_sets(sets)).collect::<Result<Vec<_>, _>>()?;
    let family = BoxFamily::new(ambient, boxes)?;
    let labels = match s.labels {
        None => None,
        Some(ls) => {
            if ls.len() != family.len() {
                return Err(FormatError::Json(format!("{} labels for {} boxes", ls.len(), family.len())));
            }
            Some(
                ls.into_iter()
                    .map(|l| PiercingVector::new(l).map_err(|e| FormatError::Json(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
    };
    let meta = if s.meta.is_empty() { DocumentMeta::default() } else { s.meta };
    Ok(PartitionDocument { family, labels, meta })
}

/// Parses either form, choosing JSON when the text starts with `{`.
pub fn parse_partition_any(text: &str) -> Result<PartitionDocument, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_partition_structured(text)
    } else {
        parse_partition_text(text)
    }
}
