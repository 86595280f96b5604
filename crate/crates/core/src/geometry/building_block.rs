//! Flag complexes of geometries and the gallery checks built on them: the
//! five-step path between cohyperlinear-style point pairs inside a rank-3
//! polar space, and the reducedness of alternating block words in the F4
//! group.

use super::{GeometryError, IncidenceGeometry};
use crate::chambers::ChamberSystem;
use crate::coxeter::{CoxeterGroup, CoxeterMatrix, Word};
use crate::ElementId;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The chamber system of all maximal flags of a geometry; type t of the
/// geometry is wired to generator t+1.
pub fn flag_complex(geom: &IncidenceGeometry) -> Result<ChamberSystem, GeometryError> {
    let flags = geom.maximal_flags();
    let type_names = geom.type_names().to_vec();
    let generator_of_type = (1..=geom.type_count() as u8).collect();
    ChamberSystem::from_flags(type_names, generator_of_type, flags)
        .map_err(GeometryError::Chamber)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildingBlockReport {
    pub pass: bool,
    pub points: u32,
    pub chambers: u32,
    pub opposite_ordered_pairs: u32,
    pub chambers_per_point: u32,
    pub expected_word: Word,
    pub failures: Vec<String>,
}

/// For every ordered pair of non-collinear ("opposite") points (p, q) of a
/// rank-3 polar geometry and every chamber C on p: the nearest chamber on q
/// lies at gallery distance exactly 5, and every minimal gallery reduces to
/// the element of the word 1,2,3,2,1.
///
/// The group must be the rank-3 head of the F4 presentation (bonds 3, 4).
pub fn verify_building_block(
    polar: &IncidenceGeometry,
    group: &CoxeterGroup,
) -> Result<BuildingBlockReport, GeometryError> {
    if polar.type_count() != 3 {
        return Err(GeometryError::WrongRank {
            expected: 3,
            found: polar.type_count(),
        });
    }
    let expected_matrix = CoxeterMatrix::f4()
        .submatrix(&[1, 2, 3])
        .expect("static submatrix");
    if group.matrix() != &expected_matrix {
        return Err(GeometryError::WrongMatrix(
            "building-block check requires the rank-3 head of F4 (bonds 3, 4)".into(),
        ));
    }

    let complex = flag_complex(polar)?;
    let expected_word = Word::new(vec![1, 2, 3, 2, 1]);
    let target = group
        .reduce(&expected_word)
        .expect("word letters fit rank 3")
        .id;

    let n_points = polar.count(0);
    let mut collinear: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n_points as usize];
    for l in polar.elements(1) {
        let pts = polar.shadow(l);
        for &a in &pts {
            for &b in &pts {
                if a != b {
                    collinear[a.index as usize].insert(b.index);
                }
            }
        }
    }
    let opposite: Vec<Vec<u32>> = (0..n_points)
        .map(|p| {
            (0..n_points)
                .filter(|&q| q != p && !collinear[p as usize].contains(&q))
                .collect()
        })
        .collect();

    let mut chambers_by_point: Vec<Vec<u32>> = vec![Vec::new(); n_points as usize];
    for c in 0..complex.chamber_count() as u32 {
        chambers_by_point[complex.chamber_flag(c)[0] as usize].push(c);
    }

    let mut failures: Vec<String> = Vec::new();
    let record = |msg: String, failures: &mut Vec<String>| {
        if failures.len() < 8 {
            failures.push(msg);
        }
    };
    let per_point: BTreeSet<usize> = chambers_by_point.iter().map(|v| v.len()).collect();
    if per_point.len() != 1 {
        record(
            format!("chamber count per point not uniform: {per_point:?}"),
            &mut failures,
        );
    }

    let mut fail_count = 0u32;
    for c in 0..complex.chamber_count() as u32 {
        let p = complex.chamber_flag(c)[0];
        let field = complex.weyl_field(group, c).map_err(GeometryError::Chamber)?;
        for &q in &opposite[p as usize] {
            let best = chambers_by_point[q as usize]
                .iter()
                .map(|&d| field.dist[d as usize])
                .min()
                .expect("every point carries a chamber");
            if best != 5 {
                fail_count += 1;
                record(
                    format!(
                        "distance from chamber {c} (on {}) to {} is {best}",
                        polar.describe(ElementId::new(0, p)),
                        polar.describe(ElementId::new(0, q))
                    ),
                    &mut failures,
                );
                continue;
            }
            for &d in &chambers_by_point[q as usize] {
                if field.dist[d as usize] != best {
                    continue;
                }
                if field.conflict[d as usize] {
                    fail_count += 1;
                    record(
                        format!("conflicting minimal galleries from {c} to {d}"),
                        &mut failures,
                    );
                } else if field.element[d as usize] != target {
                    fail_count += 1;
                    record(
                        format!(
                            "weyl distance from {c} to {d} is {} instead of {}",
                            group.element(field.element[d as usize]).unwrap().normal_form,
                            expected_word
                        ),
                        &mut failures,
                    );
                }
            }
        }
    }

    let opposite_ordered_pairs: u32 = opposite.iter().map(|v| v.len() as u32).sum();
    Ok(BuildingBlockReport {
        pass: failures.is_empty() && fail_count == 0,
        points: n_points,
        chambers: complex.chamber_count() as u32,
        opposite_ordered_pairs,
        chambers_per_point: chambers_by_point.first().map(|v| v.len() as u32).unwrap_or(0),
        expected_word,
        failures,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlternatingCheck {
    pub word: Word,
    pub reduced: bool,
    pub element_length: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlternatingReport {
    pub pass: bool,
    pub k: u32,
    pub checks: Vec<AlternatingCheck>,
}

/// Both alternating concatenations of k blocks of 1,2,3,2,1 and 4,3,2,3,4
/// (starting with either block) must be reduced of length 5k in the F4
/// group.
pub fn verify_alternating_words(
    group: &CoxeterGroup,
    k: u32,
) -> Result<AlternatingReport, GeometryError> {
    if group.matrix() != &CoxeterMatrix::f4() {
        return Err(GeometryError::WrongMatrix(
            "alternating-word check requires the F4 group".into(),
        ));
    }
    if !(1..=4).contains(&k) {
        return Err(GeometryError::Unsupported(format!(
            "block count {k} outside 1..=4"
        )));
    }
    let block_a: Vec<u8> = vec![1, 2, 3, 2, 1];
    let block_b: Vec<u8> = vec![4, 3, 2, 3, 4];
    let mut checks = Vec::new();
    for (first, second) in [(&block_a, &block_b), (&block_b, &block_a)] {
        let mut letters = Vec::with_capacity(5 * k as usize);
        for i in 0..k {
            letters.extend_from_slice(if i % 2 == 0 { first } else { second });
        }
        let word = Word::new(letters);
        let element = group.reduce(&word).expect("letters fit rank 4");
        checks.push(AlternatingCheck {
            reduced: element.length as usize == word.len(),
            element_length: element.length,
            word,
        });
    }
    let pass = checks
        .iter()
        .all(|c| c.reduced && c.element_length == 5 * k);
    Ok(AlternatingReport { pass, k, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::constructions::{build_w2, thin_geometry};

    fn c3_group() -> CoxeterGroup {
        CoxeterGroup::build_default(CoxeterMatrix::f4().submatrix(&[1, 2, 3]).unwrap()).unwrap()
    }

    #[test]
    fn w2_flag_complex_shape() {
        let cs = flag_complex(&build_w2()).unwrap();
        assert_eq!(cs.chamber_count(), 45);
        // thick: every panel has 3 chambers
        for t in 0..2 {
            assert!(cs.panels_of_type(t).iter().all(|p| p.len() == 3));
        }
    }

    #[test]
    fn octahedron_building_block() {
        let group = c3_group();
        let octa = thin_geometry(&group, &["point", "line", "plane"]);
        let report = verify_building_block(&octa.geometry, &group).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert_eq!(report.points, 6);
        assert_eq!(report.chambers, 48);
        assert_eq!(report.opposite_ordered_pairs, 6);
        assert_eq!(report.chambers_per_point, 8);
    }

    #[test]
    fn building_block_rejects_wrong_inputs() {
        let group = c3_group();
        assert!(verify_building_block(&build_w2(), &group).is_err());
        let octa = thin_geometry(&group, &["point", "line", "plane"]);
        let wrong = CoxeterGroup::build_default(
            CoxeterMatrix::new(vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]).unwrap(),
        )
        .unwrap();
        assert!(verify_building_block(&octa.geometry, &wrong).is_err());
    }

    #[test]
    fn alternating_words_all_k() {
        let f4 = CoxeterGroup::f4();
        for k in 1..=4 {
            let report = verify_alternating_words(&f4, k).unwrap();
            assert!(report.pass, "k={k}");
            for c in &report.checks {
                assert_eq!(c.element_length, 5 * k);
            }
        }
        assert!(verify_alternating_words(&f4, 0).is_err());
        assert!(verify_alternating_words(&f4, 5).is_err());
        let c3 = c3_group();
        assert!(verify_alternating_words(&c3, 1).is_err());
    }
}
