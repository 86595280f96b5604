//! The shipped concrete geometries: Desarguesian projective planes of small
//! order, the symplectic quadrangle W(2), the rank-3 symplectic polar space
//! over GF(2), and thin coset geometries of finite Coxeter groups.

use super::fields::SmallField;
use super::{GeometryError, IncidenceGeometry};
use crate::coxeter::{CoxeterGroup, CoxeterMatrix};
use crate::ElementId;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Points and lines of PG(2,q) for q in {2,3,4}, via homogeneous triples.
/// Point (x:y:z) is incident with line [a:b:c] iff ax + by + cz = 0.
pub fn build_projective_plane(q: u8) -> Result<IncidenceGeometry, GeometryError> {
    let f = SmallField::new(q)?;
    let mut reps: Vec<Vec<u8>> = Vec::new();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                if let Some(n) = f.normalize(&[x, y, z]) {
                    if seen.insert(n.clone()) {
                        reps.push(n);
                    }
                }
            }
        }
    }
    let n = reps.len() as u32;
    let mut geom = IncidenceGeometry::new(vec!["point", "line"]);
    geom.add_elements(0, n)?;
    geom.add_elements(1, n)?;
    for (p, pv) in reps.iter().enumerate() {
        for (l, lv) in reps.iter().enumerate() {
            if f.dot(pv, lv) == 0 {
                geom.add_incidence(
                    ElementId::new(0, p as u32),
                    ElementId::new(1, l as u32),
                )?;
            }
        }
    }
    Ok(geom)
}

/// Nonzero vectors of GF(2)^dim as bitmasks, in increasing order.
fn gf2_points(dim: u32) -> Vec<u32> {
    (1..(1u32 << dim)).collect()
}

/// The standard alternating form on GF(2)^dim (dim even), pairing
/// coordinates (0,1), (2,3), ...
fn symplectic_form(dim: u32, u: u32, v: u32) -> u8 {
    let mut acc = 0u32;
    let mut k = 0;
    while k < dim {
        acc ^= ((u >> k) & 1) & ((v >> (k + 1)) & 1);
        acc ^= ((u >> (k + 1)) & 1) & ((v >> k) & 1);
        k += 2;
    }
    acc as u8
}

/// The symplectic quadrangle W(2): the 15 projective points of GF(2)^4 and
/// the 15 totally isotropic lines of the alternating form.
pub fn build_w2() -> IncidenceGeometry {
    let pts = gf2_points(4);
    let mut lines: BTreeSet<[u32; 3]> = BTreeSet::new();
    for &u in &pts {
        for &v in &pts {
            if u < v && (u ^ v) > v && symplectic_form(4, u, v) == 0 {
                lines.insert([u, v, u ^ v]);
            }
        }
    }
    let mut geom = IncidenceGeometry::new(vec!["point", "line"]);
    geom.add_elements(0, pts.len() as u32).unwrap();
    geom.add_elements(1, lines.len() as u32).unwrap();
    for (l, line) in lines.iter().enumerate() {
        for &p in line {
            // points are the masks 1..=15, so index = mask - 1
            geom.add_incidence(ElementId::new(0, p - 1), ElementId::new(1, l as u32))
                .unwrap();
        }
    }
    geom
}

/// The rank-3 polar space of the symplectic form on GF(2)^6: 63 points,
/// 315 totally isotropic lines, 135 totally isotropic planes, incidence by
/// containment.
pub fn build_sp6_polar() -> IncidenceGeometry {
    let dim = 6;
    let pts = gf2_points(dim);
    let perp = |u: u32, v: u32| symplectic_form(dim, u, v) == 0;

    let mut lines: BTreeSet<[u32; 3]> = BTreeSet::new();
    for &u in &pts {
        for &v in &pts {
            if u < v && (u ^ v) > v && perp(u, v) {
                lines.insert([u, v, u ^ v]);
            }
        }
    }
    // extend isotropic lines by a third independent perpendicular vector
    let mut planes: BTreeSet<[u32; 7]> = BTreeSet::new();
    for line in &lines {
        let &[u, v, _] = line;
        for &w in &pts {
            if line.contains(&w) || !perp(u, w) || !perp(v, w) {
                continue;
            }
            let mut span = [u, v, u ^ v, w, u ^ w, v ^ w, u ^ v ^ w];
            span.sort_unstable();
            planes.insert(span);
        }
    }

    let mut geom = IncidenceGeometry::new(vec!["point", "line", "plane"]);
    geom.add_elements(0, pts.len() as u32).unwrap();
    geom.add_elements(1, lines.len() as u32).unwrap();
    geom.add_elements(2, planes.len() as u32).unwrap();
    let line_ids: BTreeMap<[u32; 3], u32> = lines
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as u32))
        .collect();
    for (&line, &l) in &line_ids {
        for p in line {
            geom.add_incidence(ElementId::new(0, p - 1), ElementId::new(1, l))
                .unwrap();
        }
    }
    for (pl, span) in planes.iter().enumerate() {
        let pl = ElementId::new(2, pl as u32);
        for &p in span {
            geom.add_incidence(ElementId::new(0, p - 1), pl).unwrap();
        }
        // the 7 isotropic lines inside the plane
        for (i, &u) in span.iter().enumerate() {
            for &v in &span[i + 1..] {
                if (u ^ v) > v {
                    let mut key = [u, v, u ^ v];
                    key.sort_unstable();
                    geom.add_incidence(ElementId::new(1, line_ids[&key]), pl)
                        .unwrap();
                }
            }
        }
    }
    geom
}

/// A thin coset geometry of a finite Coxeter group together with the coset
/// bookkeeping used by cross-checks against the group structure.
#[derive(Debug, Clone)]
pub struct ThinGeometry {
    pub geometry: IncidenceGeometry,
    /// `coset_of[type][group element id]` = element index of that type.
    pub coset_of: Vec<Vec<u32>>,
    /// One representative group element per geometry element.
    pub representative: Vec<Vec<u32>>,
}

/// The thin geometry of a finite Coxeter group: elements of type t are the
/// cosets of the maximal parabolic omitting generator t+1, incidence is
/// nonempty coset intersection.
pub fn thin_geometry(group: &CoxeterGroup, type_names: &[&str]) -> ThinGeometry {
    let rank = group.rank();
    assert_eq!(type_names.len(), rank, "one type name per generator");
    let n = group.order();
    let mut coset_of: Vec<Vec<u32>> = Vec::with_capacity(rank);
    let mut representative: Vec<Vec<u32>> = Vec::with_capacity(rank);
    for t in 0..rank {
        let others: Vec<u8> = (1..=rank as u8).filter(|&s| s != t as u8 + 1).collect();
        let mut coset = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n as u32 {
            if coset[g as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(g);
            coset[g as usize] = idx;
            let mut queue = VecDeque::from([g]);
            while let Some(x) = queue.pop_front() {
                for &s in &others {
                    let y = group.right_mul(x, s);
                    if coset[y as usize] == u32::MAX {
                        coset[y as usize] = idx;
                        queue.push_back(y);
                    }
                }
            }
        }
        coset_of.push(coset);
        representative.push(reps);
    }

    let mut geometry = IncidenceGeometry::new(type_names.to_vec());
    for (t, reps) in representative.iter().enumerate() {
        geometry.add_elements(t as u8, reps.len() as u32).unwrap();
    }
    for g in 0..n {
        for ta in 0..rank {
            for tb in (ta + 1)..rank {
                geometry
                    .add_incidence(
                        ElementId::new(ta as u8, coset_of[ta][g]),
                        ElementId::new(tb as u8, coset_of[tb][g]),
                    )
                    .unwrap();
            }
        }
    }
    ThinGeometry {
        geometry,
        coset_of,
        representative,
    }
}

/// The thin model of the four-sorted F4 geometry: 24 points, 96 lines,
/// 96 planes, 24 hyperlines as cosets of the maximal parabolics.
pub fn thin_f4_geometry(group: &CoxeterGroup) -> Result<IncidenceGeometry, GeometryError> {
    if group.matrix() != &CoxeterMatrix::f4() {
        return Err(GeometryError::WrongMatrix(
            "thin F4 geometry requires the F4 group".into(),
        ));
    }
    Ok(thin_geometry(group, &["point", "line", "plane", "hyperline"]).geometry)
}
