//! Multi-sorted incidence geometries: the shared element/incidence core,
//! residues, text import/export, and the concrete constructions, axiom
//! checkers and classifiers in the submodules.

mod building_block;
mod classify;
mod constructions;
mod embedding;
mod fields;
mod metasymplectic;
mod polygon;

pub use building_block::{
    flag_complex, verify_alternating_words, verify_building_block, AlternatingReport,
    BuildingBlockReport,
};
pub use classify::{
    classify_point_hyperline, classify_point_pair, clique_in_plane, hyperline_intersection,
    CliqueResult, HyperlineMeet, HyperlineMeetResult, PointHyperlineClass, PointHyperlineResult,
    PointPairClass, PointPairResult,
};
pub use constructions::{
    build_projective_plane, build_sp6_polar, build_w2, thin_f4_geometry, thin_geometry,
    ThinGeometry,
};
pub use embedding::{
    check_ov, classify_embedding, fixture_apartment_improper, fixture_apartment_proper,
    fixture_ov_violation, EmbeddedQuadrangle, EmbeddingReport, EmbeddingVerdict, OvReport,
    OvViolation,
};
pub use fields::SmallField;
pub use metasymplectic::{check_metasymplectic, AxiomCheck, MetaReport};
pub use polygon::{check_generalized_ngon, check_ordinary_ngon, NgonReport};

use crate::ElementId;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("type index {0} out of range")]
    UnknownType(u8),
    #[error("element {0} out of range")]
    UnknownElement(ElementId),
    #[error("incidence must relate elements of distinct types")]
    SameTypeIncidence,
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("wrong rank: expected {expected} types, found {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("unsupported construction parameter: {0}")]
    Unsupported(String),
    #[error("wrong matrix: {0}")]
    WrongMatrix(String),
    #[error("not a clique: elements {0} and {1} are not collinear")]
    NotAClique(ElementId, ElementId),
    #[error("classification failed: {0}")]
    ClassificationFailed(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("chamber system: {0}")]
    Chamber(#[from] crate::chambers::ChamberError),
}

/// A geometry over an ordered list of element types with a symmetric
/// incidence relation between elements of distinct types.  By convention
/// type 0 is the point type wherever shadows are taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceGeometry {
    type_names: Vec<String>,
    counts: Vec<u32>,
    incidence: Vec<Vec<Vec<ElementId>>>,
}

impl IncidenceGeometry {
    pub fn new(type_names: Vec<impl Into<String>>) -> Self {
        let type_names: Vec<String> = type_names.into_iter().map(Into::into).collect();
        let n = type_names.len();
        Self {
            type_names,
            counts: vec![0; n],
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn type_count(&self) -> usize {
        self.type_names.len()
    }

    pub fn type_names(&self) -> &[String] {
        &self.type_names
    }

    pub fn type_name(&self, t: u8) -> &str {
        &self.type_names[t as usize]
    }

    pub fn type_index(&self, name: &str) -> Option<u8> {
        self.type_names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u8)
    }

    pub fn count(&self, t: u8) -> u32 {
        self.counts[t as usize]
    }

    /// Appends `n` fresh elements of the given type, returning the index of
    /// the first.
    pub fn add_elements(&mut self, t: u8, n: u32) -> Result<u32, GeometryError> {
        if t as usize >= self.type_count() {
            return Err(GeometryError::UnknownType(t));
        }
        let first = self.counts[t as usize];
        self.counts[t as usize] += n;
        self.incidence[t as usize].extend((0..n).map(|_| Vec::new()));
        Ok(first)
    }

    pub fn contains(&self, e: ElementId) -> bool {
        (e.type_idx as usize) < self.type_count() && e.index < self.counts[e.type_idx as usize]
    }

    fn check_element(&self, e: ElementId) -> Result<(), GeometryError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(GeometryError::UnknownElement(e))
        }
    }

    /// Declares `a` and `b` incident (symmetric, idempotent).
    pub fn add_incidence(&mut self, a: ElementId, b: ElementId) -> Result<(), GeometryError> {
        self.check_element(a)?;
        self.check_element(b)?;
        if a.type_idx == b.type_idx {
            return Err(GeometryError::SameTypeIncidence);
        }
        let list = &mut self.incidence[a.type_idx as usize][a.index as usize];
        if let Err(pos) = list.binary_search(&b) {
            list.insert(pos, b);
        }
        let list = &mut self.incidence[b.type_idx as usize][b.index as usize];
        if let Err(pos) = list.binary_search(&a) {
            list.insert(pos, a);
        }
        Ok(())
    }

    /// All elements incident with `e`, sorted.
    pub fn incident(&self, e: ElementId) -> &[ElementId] {
        &self.incidence[e.type_idx as usize][e.index as usize]
    }

    pub fn are_incident(&self, a: ElementId, b: ElementId) -> bool {
        self.incident(a).binary_search(&b).is_ok()
    }

    pub fn incident_of_type(&self, e: ElementId, t: u8) -> impl Iterator<Item = ElementId> + '_ {
        self.incident(e)
            .iter()
            .copied()
            .filter(move |x| x.type_idx == t)
    }

    /// The point shadow: incident type-0 elements, or the element itself for
    /// a point.
    pub fn shadow(&self, e: ElementId) -> Vec<ElementId> {
        if e.type_idx == 0 {
            vec![e]
        } else {
            self.incident_of_type(e, 0).collect()
        }
    }

    pub fn elements(&self, t: u8) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.counts[t as usize]).map(move |i| ElementId::new(t, i))
    }

    pub fn all_elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.type_count() as u8).flat_map(move |t| self.elements(t))
    }

    pub fn describe(&self, e: ElementId) -> String {
        format!("{}:{}", self.type_name(e.type_idx), e.index)
    }

    /// The residue of a flag: all elements not in the flag, incident with
    /// every flag element; flag types are dropped, other types are kept in
    /// order and re-indexed densely.
    pub fn residue(&self, flag: &Flag) -> Result<Residue, GeometryError> {
        for &e in flag.elements() {
            self.check_element(e)?;
        }
        let flag_types: BTreeSet<u8> = flag.elements().iter().map(|e| e.type_idx).collect();
        let kept: Vec<u8> = (0..self.type_count() as u8)
            .filter(|t| !flag_types.contains(t))
            .collect();
        let mut geometry = IncidenceGeometry::new(
            kept.iter()
                .map(|&t| self.type_name(t).to_string())
                .collect::<Vec<_>>(),
        );
        let mut original: Vec<Vec<ElementId>> = vec![Vec::new(); kept.len()];
        let mut new_index: Vec<Vec<Option<u32>>> = self
            .counts
            .iter()
            .map(|&c| vec![None; c as usize])
            .collect();
        for (new_t, &t) in kept.iter().enumerate() {
            for e in self.elements(t) {
                if flag.elements().iter().all(|&f| self.are_incident(e, f)) {
                    let idx = geometry.add_elements(new_t as u8, 1)?;
                    new_index[t as usize][e.index as usize] = Some(idx);
                    original[new_t].push(e);
                }
            }
        }
        for (new_a, &ta) in kept.iter().enumerate() {
            for (ia, &orig_a) in original[new_a].iter().enumerate() {
                for &orig_b in self.incident(orig_a) {
                    if orig_b.type_idx <= ta {
                        continue;
                    }
                    if let Some(new_tb) = kept.iter().position(|&t| t == orig_b.type_idx) {
                        if let Some(ib) =
                            new_index[orig_b.type_idx as usize][orig_b.index as usize]
                        {
                            geometry.add_incidence(
                                ElementId::new(new_a as u8, ia as u32),
                                ElementId::new(new_tb as u8, ib),
                            )?;
                        }
                    }
                }
            }
        }
        Ok(Residue { geometry, original })
    }

    /// Maximal flags containing one element of every type, built by depth
    /// first extension through the incidence relation.
    pub fn maximal_flags(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut partial: Vec<u32> = Vec::new();
        self.extend_flags(&mut partial, &mut out);
        out
    }

    fn extend_flags(&self, partial: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let t = partial.len() as u8;
        if t as usize == self.type_count() {
            out.push(partial.clone());
            return;
        }
        'cand: for i in 0..self.counts[t as usize] {
            let e = ElementId::new(t, i);
            for (pt, &pi) in partial.iter().enumerate() {
                if !self.are_incident(e, ElementId::new(pt as u8, pi)) {
                    continue 'cand;
                }
            }
            partial.push(i);
            self.extend_flags(partial, out);
            partial.pop();
        }
    }

    /// Line-oriented text export: `type` declarations in order, then `el`
    /// and `inc` lines.  Element tokens are `<typename><index>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.type_names {
            let _ = writeln!(out, "type {name}");
        }
        for t in 0..self.type_count() as u8 {
            for e in self.elements(t) {
                let _ = writeln!(
                    out,
                    "el {} {}{}",
                    self.type_name(t),
                    self.type_name(t),
                    e.index
                );
            }
        }
        for t in 0..self.type_count() as u8 {
            for e in self.elements(t) {
                for i in self.incident(e) {
                    if i.type_idx > t {
                        let _ = writeln!(
                            out,
                            "inc {}{} {}{}",
                            self.type_name(t),
                            e.index,
                            self.type_name(i.type_idx),
                            i.index
                        );
                    }
                }
            }
        }
        out
    }

    /// Parses the text format produced by [`Self::to_text`].  Unknown
    /// directives, arity errors and undeclared ids are reported with their
    /// line number.
    pub fn from_text(text: &str) -> Result<Self, GeometryError> {
        use std::collections::HashMap;
        let mut names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, ElementId> = HashMap::new();
        let mut geom: Option<IncidenceGeometry> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks[0] {
                "type" => {
                    if toks.len() != 2 {
                        return Err(GeometryError::Parse {
                            line,
                            message: "expected `type <name>`".into(),
                        });
                    }
                    if geom.is_some() {
                        return Err(GeometryError::Parse {
                            line,
                            message: "type declarations must precede elements".into(),
                        });
                    }
                    names.push(toks[1].to_string());
                }
                "el" => {
                    if toks.len() != 3 {
                        return Err(GeometryError::Parse {
                            line,
                            message: "expected `el <type> <id>`".into(),
                        });
                    }
                    let g = geom.get_or_insert_with(|| IncidenceGeometry::new(names.clone()));
                    let t = g.type_index(toks[1]).ok_or(GeometryError::Parse {
                        line,
                        message: format!("unknown type `{}`", toks[1]),
                    })?;
                    if ids.contains_key(toks[2]) {
                        return Err(GeometryError::Parse {
                            line,
                            message: format!("duplicate element id `{}`", toks[2]),
                        });
                    }
                    let idx = g.add_elements(t, 1).expect("type index verified");
                    ids.insert(toks[2].to_string(), ElementId::new(t, idx));
                }
                "inc" => {
                    if toks.len() != 3 {
                        return Err(GeometryError::Parse {
                            line,
                            message: "expected `inc <id> <id>`".into(),
                        });
                    }
                    let g = geom.as_mut().ok_or(GeometryError::Parse {
                        line,
                        message: "incidence before any element".into(),
                    })?;
                    let a = *ids.get(toks[1]).ok_or(GeometryError::Parse {
                        line,
                        message: format!("unknown element `{}`", toks[1]),
                    })?;
                    let b = *ids.get(toks[2]).ok_or(GeometryError::Parse {
                        line,
                        message: format!("unknown element `{}`", toks[2]),
                    })?;
                    g.add_incidence(a, b).map_err(|e| GeometryError::Parse {
                        line,
                        message: e.to_string(),
                    })?;
                }
                other => {
                    return Err(GeometryError::Parse {
                        line,
                        message: format!("unknown directive `{other}`"),
                    });
                }
            }
        }
        match geom {
            Some(g) => Ok(g),
            None if !names.is_empty() => Ok(IncidenceGeometry::new(names)),
            None => Err(GeometryError::Parse {
                line: 0,
                message: "empty geometry".into(),
            }),
        }
    }
}

/// A set of mutually incident elements, at most one per type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag(Vec<ElementId>);

impl Flag {
    pub fn new(
        geom: &IncidenceGeometry,
        elements: impl IntoIterator<Item = ElementId>,
    ) -> Result<Self, GeometryError> {
        let mut v: Vec<ElementId> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let mut types = BTreeSet::new();
        for &e in &v {
            if !geom.contains(e) {
                return Err(GeometryError::UnknownElement(e));
            }
            if !types.insert(e.type_idx) {
                return Err(GeometryError::InvalidFlag(
                    "two elements of the same type".into(),
                ));
            }
        }
        for (k, &a) in v.iter().enumerate() {
            for &b in &v[k + 1..] {
                if !geom.are_incident(a, b) {
                    return Err(GeometryError::InvalidFlag(format!(
                        "{} and {} are not incident",
                        geom.describe(a),
                        geom.describe(b)
                    )));
                }
            }
        }
        Ok(Self(v))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.0
    }

    pub fn types(&self) -> Vec<u8> {
        self.0.iter().map(|e| e.type_idx).collect()
    }
}

/// A residue geometry together with the original identities of its elements.
#[derive(Debug, Clone)]
pub struct Residue {
    pub geometry: IncidenceGeometry,
    /// `original[new_type][new_index]` is the element of the ambient
    /// geometry.
    pub original: Vec<Vec<ElementId>>,
}
