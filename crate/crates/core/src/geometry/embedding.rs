//! Point/hyperline subconfigurations of a four-sorted geometry: the ambient
//! geometry plus chosen point and hyperline sets whose restricted incidence
//! is meant to be a quadrangle.  Carries the partial-ovoid condition checker
//! and the proper/improper classifier, plus three shipped fixtures built
//! inside the thin F4 geometry.

use super::classify::{classify_point_pair, hyperline_intersection, HyperlineMeet, PointPairClass};
use super::polygon::{check_generalized_ngon, NgonReport};
use super::{GeometryError, IncidenceGeometry};
use crate::ElementId;
use serde::{Deserialize, Serialize};

const POINT: u8 = 0;
const LINE: u8 = 1;
const HYPERLINE: u8 = 3;

/// A four-sorted ambient geometry with a candidate quadrangle drawn on its
/// points and hyperlines.  The restricted incidence is checked against the
/// generalized-quadrangle graph criterion at construction time and the
/// verdict is kept (thickness relaxed; nothing is rejected, the report flags
/// deviations).
#[derive(Debug, Clone)]
pub struct EmbeddedQuadrangle {
    pub ambient: IncidenceGeometry,
    pub points: Vec<u32>,
    pub hyperlines: Vec<u32>,
    pub quadrangle: NgonReport,
}

impl EmbeddedQuadrangle {
    pub fn new(
        ambient: IncidenceGeometry,
        points: Vec<u32>,
        hyperlines: Vec<u32>,
    ) -> Result<Self, GeometryError> {
        if ambient.type_count() != 4 {
            return Err(GeometryError::WrongRank {
                expected: 4,
                found: ambient.type_count(),
            });
        }
        let mut points = points;
        let mut hyperlines = hyperlines;
        points.sort_unstable();
        points.dedup();
        hyperlines.sort_unstable();
        hyperlines.dedup();
        for &p in &points {
            if !ambient.contains(ElementId::new(POINT, p)) {
                return Err(GeometryError::UnknownElement(ElementId::new(POINT, p)));
            }
        }
        for &h in &hyperlines {
            if !ambient.contains(ElementId::new(HYPERLINE, h)) {
                return Err(GeometryError::UnknownElement(ElementId::new(HYPERLINE, h)));
            }
        }
        let restricted = restricted_geometry(&ambient, &points, &hyperlines);
        let quadrangle = check_generalized_ngon(&restricted, 4, false)?;
        Ok(Self {
            ambient,
            points,
            hyperlines,
            quadrangle,
        })
    }

    pub fn point_elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.points.iter().map(|&p| ElementId::new(POINT, p))
    }

    pub fn hyperline_elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.hyperlines
            .iter()
            .map(|&h| ElementId::new(HYPERLINE, h))
    }
}

/// The two-sorted geometry induced on the chosen points and hyperlines.
fn restricted_geometry(
    ambient: &IncidenceGeometry,
    points: &[u32],
    hyperlines: &[u32],
) -> IncidenceGeometry {
    let mut g = IncidenceGeometry::new(vec!["point", "line"]);
    g.add_elements(0, points.len() as u32).unwrap();
    g.add_elements(1, hyperlines.len() as u32).unwrap();
    for (pi, &p) in points.iter().enumerate() {
        for (hi, &h) in hyperlines.iter().enumerate() {
            if ambient.are_incident(ElementId::new(POINT, p), ElementId::new(HYPERLINE, h)) {
                g.add_incidence(
                    ElementId::new(0, pi as u32),
                    ElementId::new(1, hi as u32),
                )
                .unwrap();
            }
        }
    }
    g
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OvViolation {
    pub hyperline: ElementId,
    pub x: ElementId,
    pub y: ElementId,
    pub line: ElementId,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OvReport {
    pub pass: bool,
    pub pairs_checked: u32,
    pub violations: Vec<OvViolation>,
}

/// The partial-ovoid condition: no two chosen points inside a common chosen
/// hyperline are collinear in the ambient geometry.
pub fn check_ov(e: &EmbeddedQuadrangle) -> Result<OvReport, GeometryError> {
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for h in e.hyperline_elements() {
        let inside: Vec<ElementId> = e
            .point_elements()
            .filter(|&p| e.ambient.are_incident(p, h))
            .collect();
        for (i, &x) in inside.iter().enumerate() {
            for &y in &inside[i + 1..] {
                pairs_checked += 1;
                let r = classify_point_pair(&e.ambient, x, y)?;
                if r.class == PointPairClass::Collinear {
                    violations.push(OvViolation {
                        hyperline: h,
                        x,
                        y,
                        line: r.witness.expect("collinear pairs carry a line witness"),
                    });
                }
            }
        }
    }
    Ok(OvReport {
        pass: violations.is_empty(),
        pairs_checked,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingVerdict {
    Proper,
    Improper,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub verdict: EmbeddingVerdict,
    /// For a proper verdict: a point and two of its hyperlines sharing no
    /// line.
    pub proper_witness: Option<(ElementId, ElementId, ElementId)>,
    /// For an improper verdict: per chosen point, a line common to all its
    /// chosen hyperlines (preferring one through the point itself).
    pub line_map: Vec<(ElementId, Option<ElementId>)>,
    /// Points where hyperlines share lines pairwise but no single line is
    /// common to all of them.
    pub pairwise_only: Vec<ElementId>,
}

fn share_a_line(geom: &IncidenceGeometry, h: ElementId, g: ElementId) -> bool {
    geom.incident_of_type(h, LINE)
        .any(|l| geom.are_incident(l, g))
}

/// Improper iff through every chosen point all chosen hyperlines pairwise
/// share a line; in that case also computes a per-point line common to all
/// of them (reporting points where the pairwise condition holds but no
/// global common line exists).
pub fn classify_embedding(e: &EmbeddedQuadrangle) -> Result<EmbeddingReport, GeometryError> {
    let geom = &e.ambient;
    for p in e.point_elements() {
        let through: Vec<ElementId> = e
            .hyperline_elements()
            .filter(|&h| geom.are_incident(p, h))
            .collect();
        for (i, &h) in through.iter().enumerate() {
            for &g in &through[i + 1..] {
                if !share_a_line(geom, h, g) {
                    return Ok(EmbeddingReport {
                        verdict: EmbeddingVerdict::Proper,
                        proper_witness: Some((p, h, g)),
                        line_map: Vec::new(),
                        pairwise_only: Vec::new(),
                    });
                }
            }
        }
    }

    let mut line_map = Vec::new();
    let mut pairwise_only = Vec::new();
    for p in e.point_elements() {
        let through: Vec<ElementId> = e
            .hyperline_elements()
            .filter(|&h| geom.are_incident(p, h))
            .collect();
        let common: Vec<ElementId> = geom
            .elements(LINE)
            .filter(|&l| through.iter().all(|&h| geom.are_incident(l, h)))
            .collect();
        let chosen = common
            .iter()
            .copied()
            .find(|&l| geom.are_incident(l, p))
            .or_else(|| common.first().copied());
        if chosen.is_none() && through.len() >= 2 {
            pairwise_only.push(p);
        }
        line_map.push((p, chosen));
    }
    Ok(EmbeddingReport {
        verdict: EmbeddingVerdict::Improper,
        proper_witness: None,
        line_map,
        pairwise_only,
    })
}

fn meet(geom: &IncidenceGeometry, a: u32, b: u32) -> HyperlineMeet {
    hyperline_intersection(
        geom,
        ElementId::new(HYPERLINE, a),
        ElementId::new(HYPERLINE, b),
    )
    .expect("hyperline indices are valid")
    .meet
}

fn meet_point(geom: &IncidenceGeometry, a: u32, b: u32) -> Option<u32> {
    let r = hyperline_intersection(
        geom,
        ElementId::new(HYPERLINE, a),
        ElementId::new(HYPERLINE, b),
    )
    .expect("hyperline indices are valid");
    match r.meet {
        HyperlineMeet::Point => Some(r.witness.unwrap().index),
        _ => None,
    }
}

/// An ordinary quadrangle of points and hyperlines in which consecutive
/// hyperlines meet in single points: the fixture satisfies the partial-ovoid
/// condition and classifies as proper.  Deterministic first match over the
/// ambient geometry.
pub fn fixture_apartment_proper(
    ambient: &IncidenceGeometry,
) -> Result<EmbeddedQuadrangle, GeometryError> {
    let n = ambient.count(HYPERLINE);
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            let Some(q) = meet_point(ambient, a, b) else {
                continue;
            };
            for c in 0..n {
                if c == a || c == b || meet(ambient, a, c) != HyperlineMeet::Empty {
                    continue;
                }
                let Some(r) = meet_point(ambient, b, c) else {
                    continue;
                };
                for d in 0..n {
                    if d == a
                        || d == b
                        || d == c
                        || meet(ambient, b, d) != HyperlineMeet::Empty
                    {
                        continue;
                    }
                    let (Some(s), Some(p)) =
                        (meet_point(ambient, c, d), meet_point(ambient, d, a))
                    else {
                        continue;
                    };
                    let corners = [p, q, r, s];
                    let distinct: std::collections::BTreeSet<u32> =
                        corners.iter().copied().collect();
                    if distinct.len() == 4 {
                        return EmbeddedQuadrangle::new(
                            ambient.clone(),
                            corners.to_vec(),
                            vec![a, b, c, d],
                        );
                    }
                }
            }
        }
    }
    Err(GeometryError::Unsupported(
        "no proper apartment configuration found".into(),
    ))
}

/// An ordinary quadrangle in which consecutive hyperlines meet in planes;
/// every corner's two hyperlines share the lines of that plane, so the
/// fixture classifies as improper with a total line map.
pub fn fixture_apartment_improper(
    ambient: &IncidenceGeometry,
) -> Result<EmbeddedQuadrangle, GeometryError> {
    let n = ambient.count(HYPERLINE);
    let plane_meet = |a: u32, b: u32| -> Option<ElementId> {
        let r = hyperline_intersection(
            ambient,
            ElementId::new(HYPERLINE, a),
            ElementId::new(HYPERLINE, b),
        )
        .expect("hyperline indices are valid");
        match r.meet {
            HyperlineMeet::Plane => r.witness,
            _ => None,
        }
    };
    // corner candidates: in the shared plane of the two consecutive
    // hyperlines, not on either of the other two
    let corner = |shared: ElementId, others: [u32; 2]| -> Option<u32> {
        ambient
            .shadow(shared)
            .into_iter()
            .find(|&pt| {
                others.iter().all(|&h| {
                    !ambient.are_incident(pt, ElementId::new(HYPERLINE, h))
                })
            })
            .map(|e| e.index)
    };
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            let Some(f_ab) = plane_meet(a, b) else {
                continue;
            };
            for c in 0..n {
                if c == a || c == b || plane_meet(a, c).is_some() {
                    continue;
                }
                let Some(f_bc) = plane_meet(b, c) else {
                    continue;
                };
                for d in 0..n {
                    if d == a || d == b || d == c || plane_meet(b, d).is_some() {
                        continue;
                    }
                    let (Some(f_cd), Some(f_da)) = (plane_meet(c, d), plane_meet(d, a)) else {
                        continue;
                    };
                    let (Some(q), Some(r), Some(s), Some(p)) = (
                        corner(f_ab, [c, d]),
                        corner(f_bc, [d, a]),
                        corner(f_cd, [a, b]),
                        corner(f_da, [b, c]),
                    ) else {
                        continue;
                    };
                    let corners = [p, q, r, s];
                    let distinct: std::collections::BTreeSet<u32> =
                        corners.iter().copied().collect();
                    if distinct.len() == 4 {
                        return EmbeddedQuadrangle::new(
                            ambient.clone(),
                            corners.to_vec(),
                            vec![a, b, c, d],
                        );
                    }
                }
            }
        }
    }
    Err(GeometryError::Unsupported(
        "no improper apartment configuration found".into(),
    ))
}

/// Two collinear points placed inside one hyperline: the minimal witness
/// that the partial-ovoid condition can fail.
pub fn fixture_ov_violation(
    ambient: &IncidenceGeometry,
) -> Result<EmbeddedQuadrangle, GeometryError> {
    for h in ambient.elements(HYPERLINE) {
        for l in ambient.incident_of_type(h, LINE) {
            let pts = ambient.shadow(l);
            if pts.len() >= 2
                && ambient.are_incident(pts[0], h)
                && ambient.are_incident(pts[1], h)
            {
                return EmbeddedQuadrangle::new(
                    ambient.clone(),
                    vec![pts[0].index, pts[1].index],
                    vec![h.index],
                );
            }
        }
    }
    Err(GeometryError::Unsupported(
        "no collinear pair inside a hyperline found".into(),
    ))
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
    fn proper_fixture_is_a_thin_quadrangle_satisfying_ov() {
        let e = fixture_apartment_proper(&thin()).unwrap();
        assert!(e.quadrangle.pass, "{:?}", e.quadrangle.messages);
        assert_eq!(e.quadrangle.counts, (4, 4));
        let ov = check_ov(&e).unwrap();
        assert!(ov.pass);
        assert_eq!(ov.pairs_checked, 4);
        let emb = classify_embedding(&e).unwrap();
        assert_eq!(emb.verdict, EmbeddingVerdict::Proper);
        assert!(emb.proper_witness.is_some());
    }

    #[test]
    fn improper_fixture_has_total_line_map() {
        let e = fixture_apartment_improper(&thin()).unwrap();
        assert!(e.quadrangle.pass, "{:?}", e.quadrangle.messages);
        let emb = classify_embedding(&e).unwrap();
        assert_eq!(emb.verdict, EmbeddingVerdict::Improper);
        assert!(emb.pairwise_only.is_empty());
        assert_eq!(emb.line_map.len(), 4);
        for (p, line) in &emb.line_map {
            let l = line.expect("line map must be total");
            // the chosen line lies in every chosen hyperline through p
            for h in e.hyperline_elements() {
                if e.ambient.are_incident(*p, h) {
                    assert!(e.ambient.are_incident(l, h));
                }
            }
        }
        // improper embedding still satisfies the partial-ovoid condition
        assert!(check_ov(&e).unwrap().pass);
    }

    #[test]
    fn violation_fixture_fails_with_witness() {
        let e = fixture_ov_violation(&thin()).unwrap();
        assert!(!e.quadrangle.pass); // flagged: not a quadrangle at all
        let ov = check_ov(&e).unwrap();
        assert!(!ov.pass);
        let v = &ov.violations[0];
        assert!(e.ambient.are_incident(v.x, v.line));
        assert!(e.ambient.are_incident(v.y, v.line));
        assert!(e.ambient.are_incident(v.x, v.hyperline));
    }

    #[test]
    fn empty_hyperline_set_passes_ov() {
        let e = EmbeddedQuadrangle::new(thin(), vec![0, 1, 2], vec![]).unwrap();
        let ov = check_ov(&e).unwrap();
        assert!(ov.pass);
        assert_eq!(ov.pairs_checked, 0);
    }

    #[test]
    fn single_point_per_hyperline_passes_ov_and_is_vacuously_improper() {
        let thin = thin();
        let h0 = ElementId::new(HYPERLINE, 0);
        let h1 = ElementId::new(HYPERLINE, 1);
        let p0 = thin.shadow(h0)[0];
        let p1 = thin
            .shadow(h1)
            .into_iter()
            .find(|&p| !thin.are_incident(p, h0) && p != p0)
            .unwrap();
        let e =
            EmbeddedQuadrangle::new(thin, vec![p0.index, p1.index], vec![0, 1]).unwrap();
        assert!(check_ov(&e).unwrap().pass);
        let emb = classify_embedding(&e).unwrap();
        assert_eq!(emb.verdict, EmbeddingVerdict::Improper);
        for (_, line) in &emb.line_map {
            assert!(line.is_some());
        }
    }

    #[test]
    fn rejects_wrong_rank_and_bad_indices() {
        let two_typed = crate::geometry::constructions::build_w2();
        assert!(EmbeddedQuadrangle::new(two_typed, vec![], vec![]).is_err());
        assert!(EmbeddedQuadrangle::new(thin(), vec![99], vec![]).is_err());
    }
}
