//! The four defining axioms of a four-sorted point/line/plane/hyperline
//! geometry, checked exhaustively over all flags of the relevant types.
//!
//! In thin mode the projective-plane and quadrangle residues are replaced by
//! their ordinary (2n-cycle) analogues, and digon residues must be the
//! ordinary 2+2 digon; reports carry the mode so thin verdicts are never
//! mistaken for thick ones.

use super::polygon::{check_generalized_ngon, check_ordinary_ngon};
use super::{Flag, GeometryError, IncidenceGeometry};
use crate::ElementId;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const POINT: u8 = 0;
const LINE: u8 = 1;
const PLANE: u8 = 2;
const HYPERLINE: u8 = 3;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub pass: bool,
    pub flags_checked: u32,
    /// First few failures, each naming a witness flag.
    pub failures: Vec<String>,
}

impl AxiomCheck {
    fn new() -> Self {
        Self {
            pass: true,
            flags_checked: 0,
            failures: Vec::new(),
        }
    }

    fn record_failure(&mut self, witness: String) {
        self.pass = false;
        if self.failures.len() < 8 {
            self.failures.push(witness);
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetaReport {
    pub pass: bool,
    pub thin_mode: bool,
    pub m1: AxiomCheck,
    pub m2: AxiomCheck,
    pub m3: AxiomCheck,
    pub m4: AxiomCheck,
}

/// All flags of one type pair, as (a, b) element pairs.
fn flags_of_types(
    geom: &IncidenceGeometry,
    ta: u8,
    tb: u8,
) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    geom.elements(ta)
        .flat_map(move |a| geom.incident_of_type(a, tb).map(move |b| (a, b)))
}

fn check_residues(
    geom: &IncidenceGeometry,
    ta: u8,
    tb: u8,
    n: u32,
    thin_mode: bool,
    check: &mut AxiomCheck,
) -> Result<(), GeometryError> {
    for (a, b) in flags_of_types(geom, ta, tb) {
        check.flags_checked += 1;
        let flag = Flag::new(geom, [a, b])?;
        let residue = geom.residue(&flag)?.geometry;
        let report = if thin_mode {
            check_ordinary_ngon(&residue, n)?
        } else {
            check_generalized_ngon(&residue, n, true)?
        };
        if !report.pass {
            check.record_failure(format!(
                "residue of {{{},{}}}: {}",
                geom.describe(a),
                geom.describe(b),
                report.messages.join("; ")
            ));
        }
    }
    Ok(())
}

/// Verifies the residue axioms and shadow injectivity of a four-sorted
/// geometry:
///
/// * residues of {point,line} and {plane,hyperline} flags are projective
///   planes (ordinary triangles in thin mode),
/// * residues of {point,plane}, {line,hyperline} and {line,plane} flags are
///   generalized digons (ordinary digons in thin mode),
/// * residues of {point,hyperline} flags are generalized quadrangles
///   (ordinary quadrangles in thin mode),
/// * distinct non-point elements have distinct point shadows.
pub fn check_metasymplectic(
    geom: &IncidenceGeometry,
    thin_mode: bool,
) -> Result<MetaReport, GeometryError> {
    if geom.type_count() != 4 {
        return Err(GeometryError::WrongRank {
            expected: 4,
            found: geom.type_count(),
        });
    }

    let mut m1 = AxiomCheck::new();
    check_residues(geom, POINT, LINE, 3, thin_mode, &mut m1)?;
    check_residues(geom, PLANE, HYPERLINE, 3, thin_mode, &mut m1)?;

    let mut m2 = AxiomCheck::new();
    for (ta, tb) in [(POINT, PLANE), (LINE, HYPERLINE), (LINE, PLANE)] {
        check_residues(geom, ta, tb, 2, thin_mode, &mut m2)?;
    }

    let mut m3 = AxiomCheck::new();
    check_residues(geom, POINT, HYPERLINE, 4, thin_mode, &mut m3)?;

    let mut m4 = AxiomCheck::new();
    let mut shadows: BTreeMap<Vec<ElementId>, ElementId> = BTreeMap::new();
    for t in [LINE, PLANE, HYPERLINE] {
        for e in geom.elements(t) {
            m4.flags_checked += 1;
            let shadow = geom.shadow(e);
            if let Some(&other) = shadows.get(&shadow) {
                m4.record_failure(format!(
                    "{} and {} share the point shadow",
                    geom.describe(other),
                    geom.describe(e)
                ));
            } else {
                shadows.insert(shadow, e);
            }
        }
    }

    let pass = m1.pass && m2.pass && m3.pass && m4.pass;
    Ok(MetaReport {
        pass,
        thin_mode,
        m1,
        m2,
        m3,
        m4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::constructions::build_sp6_polar;

    #[test]
    fn wrong_rank_rejected() {
        let g = build_sp6_polar();
        assert!(matches!(
            check_metasymplectic(&g, false),
            Err(GeometryError::WrongRank { .. })
        ));
    }

    #[test]
    fn padded_polar_space_fails_with_witness() {
        // adding a dummy hyperline type leaves {plane,hyperline} flags empty
        // and breaks the M3 quadrangle residues
        let sp6 = build_sp6_polar();
        let mut g = IncidenceGeometry::new(vec!["point", "line", "plane", "hyperline"]);
        for t in 0..3u8 {
            g.add_elements(t, sp6.count(t)).unwrap();
        }
        for t in 0..3u8 {
            for e in sp6.elements(t) {
                for i in sp6.incident(e) {
                    if i.type_idx > t {
                        g.add_incidence(e, *i).unwrap();
                    }
                }
            }
        }
        g.add_elements(HYPERLINE, 1).unwrap();
        g.add_incidence(ElementId::new(POINT, 0), ElementId::new(HYPERLINE, 0))
            .unwrap();
        let report = check_metasymplectic(&g, false).unwrap();
        assert!(!report.pass);
        assert!(!report.m3.pass);
        assert!(!report.m3.failures.is_empty());
    }

    #[test]
    fn duplicate_shadows_fail_m4() {
        // two lines on the same two points
        let mut g = IncidenceGeometry::new(vec!["point", "line", "plane", "hyperline"]);
        g.add_elements(POINT, 2).unwrap();
        g.add_elements(LINE, 2).unwrap();
        for l in 0..2 {
            for p in 0..2 {
                g.add_incidence(ElementId::new(POINT, p), ElementId::new(LINE, l))
                    .unwrap();
            }
        }
        let report = check_metasymplectic(&g, true).unwrap();
        assert!(!report.m4.pass);
        assert!(report.m4.failures[0].contains("line"));
    }
}
