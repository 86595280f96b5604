//! Mutual-position classifiers for four-sorted geometries: point pairs,
//! point/hyperline pairs, hyperline intersections, and the clique-in-a-plane
//! predicate.
//!
//! Each classifier is total on well-formed input and returns its witness;
//! uniqueness violations are reported as diagnostics instead of being
//! silently resolved, so malformed models surface in reports.

use super::{GeometryError, IncidenceGeometry};
use crate::ElementId;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

const POINT: u8 = 0;
const LINE: u8 = 1;
const PLANE: u8 = 2;
const HYPERLINE: u8 = 3;

fn require_rank4(geom: &IncidenceGeometry) -> Result<(), GeometryError> {
    if geom.type_count() != 4 {
        return Err(GeometryError::WrongRank {
            expected: 4,
            found: geom.type_count(),
        });
    }
    Ok(())
}

fn require_type(geom: &IncidenceGeometry, e: ElementId, t: u8) -> Result<(), GeometryError> {
    if !geom.contains(e) {
        return Err(GeometryError::UnknownElement(e));
    }
    if e.type_idx != t {
        return Err(GeometryError::TypeMismatch(format!(
            "expected a {}, got {}",
            geom.type_name(t),
            geom.describe(e)
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointPairClass {
    Equal,
    Collinear,
    Cohyperlinear,
    AlmostOpposite,
    Opposite,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointPairResult {
    pub class: PointPairClass,
    /// The common line, common hyperline or common neighbour, by class.
    pub witness: Option<ElementId>,
    pub violations: Vec<String>,
}

/// Points collinear with `x`: sharing a line.
fn collinear_set(geom: &IncidenceGeometry, x: ElementId) -> BTreeSet<ElementId> {
    geom.incident_of_type(x, LINE)
        .flat_map(|l| geom.shadow(l))
        .filter(|&y| y != x)
        .collect()
}

/// Classifies two points as equal, collinear (unique common line),
/// cohyperlinear (unique common hyperline, no common line), almost opposite
/// (unique common neighbour) or opposite (no common neighbour).
pub fn classify_point_pair(
    geom: &IncidenceGeometry,
    x: ElementId,
    y: ElementId,
) -> Result<PointPairResult, GeometryError> {
    require_rank4(geom)?;
    require_type(geom, x, POINT)?;
    require_type(geom, y, POINT)?;
    if x == y {
        return Ok(PointPairResult {
            class: PointPairClass::Equal,
            witness: None,
            violations: Vec::new(),
        });
    }
    let mut violations = Vec::new();
    let common_lines: Vec<ElementId> = geom
        .incident_of_type(x, LINE)
        .filter(|&l| geom.are_incident(l, y))
        .collect();
    if !common_lines.is_empty() {
        if common_lines.len() > 1 {
            violations.push(format!(
                "{} common lines through {} and {}",
                common_lines.len(),
                geom.describe(x),
                geom.describe(y)
            ));
        }
        return Ok(PointPairResult {
            class: PointPairClass::Collinear,
            witness: Some(common_lines[0]),
            violations,
        });
    }
    let common_hyperlines: Vec<ElementId> = geom
        .incident_of_type(x, HYPERLINE)
        .filter(|&h| geom.are_incident(h, y))
        .collect();
    if !common_hyperlines.is_empty() {
        if common_hyperlines.len() > 1 {
            violations.push(format!(
                "{} common hyperlines through {} and {}",
                common_hyperlines.len(),
                geom.describe(x),
                geom.describe(y)
            ));
        }
        return Ok(PointPairResult {
            class: PointPairClass::Cohyperlinear,
            witness: Some(common_hyperlines[0]),
            violations,
        });
    }
    let cx = collinear_set(geom, x);
    let cy = collinear_set(geom, y);
    let common: Vec<ElementId> = cx.intersection(&cy).copied().collect();
    match common.len() {
        0 => Ok(PointPairResult {
            class: PointPairClass::Opposite,
            witness: None,
            violations,
        }),
        n => {
            if n > 1 {
                violations.push(format!(
                    "{n} common neighbours of {} and {}",
                    geom.describe(x),
                    geom.describe(y)
                ));
            }
            Ok(PointPairResult {
                class: PointPairClass::AlmostOpposite,
                witness: Some(common[0]),
                violations,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointHyperlineClass {
    Incident,
    Near,
    Far,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointHyperlineResult {
    pub class: PointHyperlineClass,
    /// The witness line inside the hyperline (near) or the unique
    /// cohyperlinear point of the hyperline (far).
    pub witness: Option<ElementId>,
    pub violations: Vec<String>,
}

/// Classifies a point against a hyperline: incident; near (a unique line in
/// the hyperline all of whose points are collinear with x); or far (a unique
/// point of the hyperline cohyperlinear with x).
pub fn classify_point_hyperline(
    geom: &IncidenceGeometry,
    x: ElementId,
    h: ElementId,
) -> Result<PointHyperlineResult, GeometryError> {
    require_rank4(geom)?;
    require_type(geom, x, POINT)?;
    require_type(geom, h, HYPERLINE)?;
    if geom.are_incident(x, h) {
        return Ok(PointHyperlineResult {
            class: PointHyperlineClass::Incident,
            witness: None,
            violations: Vec::new(),
        });
    }
    let mut violations = Vec::new();
    let collinear_with_x = collinear_set(geom, x);
    let near_lines: Vec<ElementId> = geom
        .incident_of_type(h, LINE)
        .filter(|&l| geom.shadow(l).iter().all(|p| collinear_with_x.contains(p)))
        .collect();
    if !near_lines.is_empty() {
        if near_lines.len() > 1 {
            violations.push(format!(
                "{} lines of {} fully collinear with {}",
                near_lines.len(),
                geom.describe(h),
                geom.describe(x)
            ));
        }
        return Ok(PointHyperlineResult {
            class: PointHyperlineClass::Near,
            witness: Some(near_lines[0]),
            violations,
        });
    }
    let far_points: Vec<ElementId> = geom
        .shadow(h)
        .into_iter()
        .filter(|&u| {
            classify_point_pair(geom, x, u)
                .map(|r| r.class == PointPairClass::Cohyperlinear)
                .unwrap_or(false)
        })
        .collect();
    match far_points.len() {
        0 => Err(GeometryError::ClassificationFailed(format!(
            "{} vs {}: no near line and no cohyperlinear point",
            geom.describe(x),
            geom.describe(h)
        ))),
        n => {
            if n > 1 {
                violations.push(format!(
                    "{n} points of {} cohyperlinear with {}",
                    geom.describe(h),
                    geom.describe(x)
                ));
            }
            Ok(PointHyperlineResult {
                class: PointHyperlineClass::Far,
                witness: Some(far_points[0]),
                violations,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperlineMeet {
    Empty,
    Point,
    Plane,
    Other,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperlineMeetResult {
    pub meet: HyperlineMeet,
    pub witness: Option<ElementId>,
    pub common_points: u32,
}

/// Classifies the shadow intersection of two hyperlines as empty, a single
/// point, the full shadow of a plane, or something else (a diagnostic for
/// models outside the axioms; equal hyperlines also land there).
pub fn hyperline_intersection(
    geom: &IncidenceGeometry,
    h: ElementId,
    g: ElementId,
) -> Result<HyperlineMeetResult, GeometryError> {
    require_rank4(geom)?;
    require_type(geom, h, HYPERLINE)?;
    require_type(geom, g, HYPERLINE)?;
    let sh: BTreeSet<ElementId> = geom.shadow(h).into_iter().collect();
    let sg: BTreeSet<ElementId> = geom.shadow(g).into_iter().collect();
    let common: BTreeSet<ElementId> = sh.intersection(&sg).copied().collect();
    let result = |meet, witness| {
        Ok(HyperlineMeetResult {
            meet,
            witness,
            common_points: common.len() as u32,
        })
    };
    match common.len() {
        0 => result(HyperlineMeet::Empty, None),
        1 => {
            let w = *common.iter().next().unwrap();
            result(HyperlineMeet::Point, Some(w))
        }
        _ => {
            if h != g {
                let anchor = *common.iter().next().unwrap();
                for plane in geom.incident_of_type(anchor, PLANE) {
                    let shadow: BTreeSet<ElementId> = geom.shadow(plane).into_iter().collect();
                    if shadow == common {
                        return result(HyperlineMeet::Plane, Some(plane));
                    }
                }
            }
            result(HyperlineMeet::Other, None)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliqueResult {
    pub contained: bool,
    pub witness_plane: Option<ElementId>,
}

/// Given pairwise-collinear points, finds a plane containing them all (the
/// guarantee holds in genuine four-sorted models; the false branch is a
/// diagnostic for everything else).
pub fn clique_in_plane(
    geom: &IncidenceGeometry,
    points: &[ElementId],
) -> Result<CliqueResult, GeometryError> {
    require_rank4(geom)?;
    for &x in points {
        require_type(geom, x, POINT)?;
    }
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            if x != y {
                let class = classify_point_pair(geom, x, y)?.class;
                if class != PointPairClass::Collinear {
                    return Err(GeometryError::NotAClique(x, y));
                }
            }
        }
    }
    let candidates: Box<dyn Iterator<Item = ElementId>> = match points.first() {
        Some(&x) => Box::new(geom.incident_of_type(x, PLANE)),
        None => Box::new(geom.elements(PLANE)),
    };
    for plane in candidates {
        if points.iter().all(|&x| geom.are_incident(x, plane)) {
            return Ok(CliqueResult {
                contained: true,
                witness_plane: Some(plane),
            });
        }
    }
    Ok(CliqueResult {
        contained: false,
        witness_plane: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;
    use crate::geometry::constructions::thin_f4_geometry;

    fn thin() -> IncidenceGeometry {
        thin_f4_geometry(&CoxeterGroup::f4()).unwrap()
    }

    #[test]
    fn equal_and_collinear() {
        let g = thin();
        let p = ElementId::new(POINT, 0);
        assert_eq!(
            classify_point_pair(&g, p, p).unwrap().class,
            PointPairClass::Equal
        );
        let line = ElementId::new(LINE, 0);
        let pts = g.shadow(line);
        let r = classify_point_pair(&g, pts[0], pts[1]).unwrap();
        assert_eq!(r.class, PointPairClass::Collinear);
        assert_eq!(r.witness, Some(line));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn type_checks() {
        let g = thin();
        let p = ElementId::new(POINT, 0);
        let l = ElementId::new(LINE, 0);
        assert!(classify_point_pair(&g, p, l).is_err());
        assert!(classify_point_hyperline(&g, l, p).is_err());
        assert!(hyperline_intersection(&g, p, p).is_err());
    }

    #[test]
    fn incident_point_hyperline() {
        let g = thin();
        let h = ElementId::new(HYPERLINE, 0);
        let x = g.shadow(h)[0];
        assert_eq!(
            classify_point_hyperline(&g, x, h).unwrap().class,
            PointHyperlineClass::Incident
        );
    }

    #[test]
    fn equal_hyperlines_are_other() {
        let g = thin();
        let h = ElementId::new(HYPERLINE, 0);
        let r = hyperline_intersection(&g, h, h).unwrap();
        assert_eq!(r.meet, HyperlineMeet::Other);
        assert_eq!(r.common_points, 6);
    }

    #[test]
    fn line_shadow_is_a_clique_in_a_plane() {
        let g = thin();
        let line = ElementId::new(LINE, 5);
        let pts = g.shadow(line);
        let r = clique_in_plane(&g, &pts).unwrap();
        assert!(r.contained);
        let plane = r.witness_plane.unwrap();
        assert!(pts.iter().all(|&p| g.are_incident(p, plane)));
    }

    #[test]
    fn non_collinear_pair_is_not_a_clique() {
        let g = thin();
        // find an opposite pair: classify until one comes up opposite
        let p = ElementId::new(POINT, 0);
        let q = g
            .elements(POINT)
            .find(|&q| {
                classify_point_pair(&g, p, q).unwrap().class == PointPairClass::Opposite
            })
            .expect("thin F4 has opposite point pairs");
        assert!(matches!(
            clique_in_plane(&g, &[p, q]),
            Err(GeometryError::NotAClique(_, _))
        ));
    }

    #[test]
    fn empty_and_single_cliques() {
        let g = thin();
        assert!(clique_in_plane(&g, &[]).unwrap().contained);
        let r = clique_in_plane(&g, &[ElementId::new(POINT, 3)]).unwrap();
        assert!(r.contained);
        assert!(g.are_incident(ElementId::new(POINT, 3), r.witness_plane.unwrap()));
    }

    #[test]
    fn uniqueness_violations_are_diagnosed() {
        // two hyperlines on the same two cohyperlinear points
        let mut g = IncidenceGeometry::new(vec!["point", "line", "plane", "hyperline"]);
        g.add_elements(POINT, 2).unwrap();
        g.add_elements(HYPERLINE, 2).unwrap();
        for h in 0..2 {
            for p in 0..2 {
                g.add_incidence(ElementId::new(POINT, p), ElementId::new(HYPERLINE, h))
                    .unwrap();
            }
        }
        let r =
            classify_point_pair(&g, ElementId::new(POINT, 0), ElementId::new(POINT, 1)).unwrap();
        assert_eq!(r.class, PointPairClass::Cohyperlinear);
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn unclassifiable_point_hyperline_errors() {
        // a hyperline with a single isolated point and a far-away point with
        // no lines at all: neither near nor far applies
        let mut g = IncidenceGeometry::new(vec!["point", "line", "plane", "hyperline"]);
        g.add_elements(POINT, 2).unwrap();
        g.add_elements(HYPERLINE, 1).unwrap();
        g.add_incidence(ElementId::new(POINT, 0), ElementId::new(HYPERLINE, 0))
            .unwrap();
        assert!(matches!(
            classify_point_hyperline(&g, ElementId::new(POINT, 1), ElementId::new(HYPERLINE, 0)),
            Err(GeometryError::ClassificationFailed(_))
        ));
    }
}
