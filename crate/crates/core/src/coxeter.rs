//! Coxeter presentations, exact enumeration of finite Coxeter groups and the
//! word problem.
//!
//! A group is enumerated once into flat multiplication tables; every later
//! operation (reduction, length, descents, coset machinery) is a table walk.
//! Element ids are assigned in breadth-first ShortLex discovery order, so id
//! order coincides with ShortLex order of the normal forms.
//!
//! Element equality during enumeration uses one of two exact backends:
//! crystallographic matrices (all bonds in {2,3,4,6}) act by permutations on
//! the finite root system built over the integers in the simple-root basis;
//! anything else falls back to bounded braid-move closure on words.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Marker used for an infinite bond order in matrix entries and JSON input.
pub const INFINITE_BOND: u32 = 0;

/// Hard bound on the number of words visited by one braid-closure call.
const CLOSURE_BOUND: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("cap exceeded: enumeration passed {cap} elements without closing")]
    CapExceeded { cap: usize },
    #[error("letter {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: u8, rank: usize },
    #[error("element id {0} does not belong to this group")]
    UnknownElement(u32),
    #[error("longest element is not unique (corrupted tables)")]
    NotUnique,
    #[error("word-equality closure exceeded {0} words")]
    ClosureBound(usize),
}

/// Symmetric matrix of bond orders m[i][j] defining a Coxeter presentation.
///
/// Serialized as a bare 2D integer array; an entry of `0` encodes an
/// infinite bond.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let rank = entries.len();
        if rank == 0 {
            return Err(CoxeterError::InvalidMatrix("rank must be positive".into()));
        }
        if rank > u8::MAX as usize {
            return Err(CoxeterError::InvalidMatrix("rank too large".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != rank {
                return Err(CoxeterError::InvalidMatrix(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "diagonal entry m[{0}][{0}] must be 1",
                        i + 1
                    )));
                }
                if i != j && m == 1 {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "off-diagonal entry m[{}][{}] must be >= 2 (or 0 for infinity)",
                        i + 1,
                        j + 1
                    )));
                }
                if m != entries[j][i] {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "matrix not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    /// The type F4 matrix: bonds 3, 4, 3 along the diagram, 2 elsewhere.
    pub fn f4() -> Self {
        Self::new(vec![
            vec![1, 3, 2, 2],
            vec![3, 1, 4, 2],
            vec![2, 4, 1, 3],
            vec![2, 2, 3, 1],
        ])
        .expect("static matrix is valid")
    }

    /// Rank-2 matrix with the given bond order (dihedral presentation).
    pub fn dihedral(m: u32) -> Result<Self, CoxeterError> {
        Self::new(vec![vec![1, m], vec![m, 1]])
    }

    pub fn rank_one() -> Self {
        Self::new(vec![vec![1]]).expect("static matrix is valid")
    }

    /// Restriction to a subset of generators (1-based, sorted, deduplicated).
    pub fn submatrix(&self, generators: &[u8]) -> Result<Self, CoxeterError> {
        let mut gens: Vec<u8> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(CoxeterError::InvalidMatrix("empty generator subset".into()));
        }
        for &s in &gens {
            if s == 0 || s as usize > self.rank() {
                return Err(CoxeterError::LetterOutOfRange {
                    letter: s,
                    rank: self.rank(),
                });
            }
        }
        let entries = gens
            .iter()
            .map(|&i| gens.iter().map(|&j| self.bond(i, j)).collect())
            .collect();
        Self::new(entries)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Bond order between generators i and j (1-based); 0 means infinite.
    pub fn bond(&self, i: u8, j: u8) -> u32 {
        self.entries[(i - 1) as usize][(j - 1) as usize]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    /// All finite off-diagonal bonds in {2,3,4,6}: the group acts exactly on
    /// an integral root system.
    pub fn is_crystallographic(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| i == j || matches!(self.entries[i][j], 2 | 3 | 4 | 6))
        })
    }
}

impl TryFrom<Vec<Vec<u32>>> for CoxeterMatrix {
    type Error = CoxeterError;
    fn try_from(entries: Vec<Vec<u32>>) -> Result<Self, Self::Error> {
        Self::new(entries)
    }
}

impl From<CoxeterMatrix> for Vec<Vec<u32>> {
    fn from(m: CoxeterMatrix) -> Self {
        m.entries
    }
}

/// A free word over the generators, letters 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: impl Into<Vec<u8>>) -> Self {
        Self(letters.into())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = CoxeterError;

    /// Parses the comma-separated 1-based form, e.g. `"1,2,3,2,1"`.  The
    /// empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Self::empty());
        }
        let mut letters = Vec::new();
        for tok in s.split(',') {
            let letter: u8 = tok.trim().parse().map_err(|_| {
                CoxeterError::InvalidMatrix(format!("cannot parse word letter `{tok}`"))
            })?;
            if letter == 0 {
                return Err(CoxeterError::LetterOutOfRange {
                    letter: 0,
                    rank: u8::MAX as usize,
                });
            }
            letters.push(letter);
        }
        Ok(Self(letters))
    }
}

/// A canonical group element: its id in the enumerated group, the ShortLex
/// normal form, and its length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub id: u32,
    pub normal_form: Word,
    pub length: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite Coxeter group enumerated into total multiplication tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    elements: Vec<GroupElement>,
    right: Vec<u32>,
    left: Vec<u32>,
}

struct Enumerated {
    normal_forms: Vec<Vec<u8>>,
    right: Vec<u32>,
}

impl CoxeterGroup {
    pub const DEFAULT_CAP: usize = 10_000;

    /// Enumerates the group presented by `matrix`, failing with
    /// [`CoxeterError::CapExceeded`] if more than `cap` elements appear.
    pub fn build(matrix: CoxeterMatrix, cap: usize) -> Result<Self, CoxeterError> {
        if cap == 0 {
            return Err(CoxeterError::CapExceeded { cap });
        }
        let enumerated = if matrix.is_crystallographic() {
            enumerate_by_roots(&matrix, cap)?
        } else {
            enumerate_by_braid_closure(&matrix, cap)?
        };
        let rank = matrix.rank();
        let n = enumerated.normal_forms.len();
        let elements: Vec<GroupElement> = enumerated
            .normal_forms
            .into_iter()
            .enumerate()
            .map(|(id, nf)| GroupElement {
                id: id as u32,
                length: nf.len() as u32,
                normal_form: Word::new(nf),
            })
            .collect();
        let right = enumerated.right;
        // left action derived from the right table: s*g = fold of [s] ++ nf(g)
        let mut left = vec![0u32; n * rank];
        for g in 0..n {
            for s in 0..rank {
                let mut acc = right[s];
                for &l in elements[g].normal_form.letters() {
                    acc = right[acc as usize * rank + (l - 1) as usize];
                }
                left[g * rank + s] = acc;
            }
        }
        Ok(Self {
            matrix,
            elements,
            right,
            left,
        })
    }

    pub fn build_default(matrix: CoxeterMatrix) -> Result<Self, CoxeterError> {
        Self::build(matrix, Self::DEFAULT_CAP)
    }

    /// The F4 group of order 1152.
    pub fn f4() -> Self {
        Self::build_default(CoxeterMatrix::f4()).expect("F4 is finite")
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elements[0]
    }

    pub fn element(&self, id: u32) -> Result<&GroupElement, CoxeterError> {
        self.elements
            .get(id as usize)
            .ok_or(CoxeterError::UnknownElement(id))
    }

    pub fn length(&self, id: u32) -> u32 {
        self.elements[id as usize].length
    }

    fn check_letter(&self, s: u8) -> Result<(), CoxeterError> {
        if s == 0 || s as usize > self.rank() {
            return Err(CoxeterError::LetterOutOfRange {
                letter: s,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Right action id * s (1-based generator).
    pub fn right_mul(&self, id: u32, s: u8) -> u32 {
        self.right[id as usize * self.rank() + (s - 1) as usize]
    }

    /// Left action s * id (1-based generator).
    pub fn left_mul(&self, id: u32, s: u8) -> u32 {
        self.left[id as usize * self.rank() + (s - 1) as usize]
    }

    /// The element of a single generator.
    pub fn generator(&self, s: u8) -> Result<&GroupElement, CoxeterError> {
        self.check_letter(s)?;
        Ok(&self.elements[self.right[(s - 1) as usize] as usize])
    }

    fn fold_word(&self, start: u32, w: &Word) -> Result<u32, CoxeterError> {
        let mut acc = start;
        for &l in w.letters() {
            self.check_letter(l)?;
            acc = self.right_mul(acc, l);
        }
        Ok(acc)
    }

    /// Evaluates an arbitrary word to its canonical element.
    pub fn reduce(&self, w: &Word) -> Result<&GroupElement, CoxeterError> {
        let id = self.fold_word(0, w)?;
        Ok(&self.elements[id as usize])
    }

    /// True iff the word is a minimal-length expression of its element.
    pub fn is_reduced(&self, w: &Word) -> Result<bool, CoxeterError> {
        Ok(self.reduce(w)?.length as usize == w.len())
    }

    fn check_membership(&self, g: &GroupElement) -> Result<(), CoxeterError> {
        match self.elements.get(g.id as usize) {
            Some(own) if own.normal_form == g.normal_form => Ok(()),
            _ => Err(CoxeterError::UnknownElement(g.id)),
        }
    }

    pub fn multiply_ids(&self, a: u32, b: u32) -> u32 {
        let mut acc = a;
        for &l in self.elements[b as usize].normal_form.letters() {
            acc = self.right_mul(acc, l);
        }
        acc
    }

    /// Group product, folding h's normal form through the right action.
    pub fn multiply(
        &self,
        g: &GroupElement,
        h: &GroupElement,
    ) -> Result<&GroupElement, CoxeterError> {
        self.check_membership(g)?;
        self.check_membership(h)?;
        Ok(&self.elements[self.multiply_ids(g.id, h.id) as usize])
    }

    /// Generators are involutions, so the reversed normal form inverts.
    pub fn inverse_id(&self, id: u32) -> u32 {
        let mut acc = 0;
        for &l in self.elements[id as usize].normal_form.letters().iter().rev() {
            acc = self.right_mul(acc, l);
        }
        acc
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<&GroupElement, CoxeterError> {
        self.check_membership(g)?;
        Ok(&self.elements[self.inverse_id(g.id) as usize])
    }

    /// Generators whose multiplication on the given side shortens the element.
    pub fn descents(&self, id: u32, side: Side) -> Vec<u8> {
        let len = self.length(id);
        (1..=self.rank() as u8)
            .filter(|&s| {
                let next = match side {
                    Side::Left => self.left_mul(id, s),
                    Side::Right => self.right_mul(id, s),
                };
                self.length(next) < len
            })
            .collect()
    }

    /// The unique element of maximal length.
    pub fn longest_element(&self) -> Result<&GroupElement, CoxeterError> {
        let max = self.elements.iter().map(|e| e.length).max().unwrap();
        let mut hits = self.elements.iter().filter(|e| e.length == max);
        let first = hits.next().unwrap();
        if hits.next().is_some() {
            return Err(CoxeterError::NotUnique);
        }
        Ok(first)
    }
}

/// Cartan integer pair for a finite bond order.
fn cartan_pair(m: u32) -> (i64, i64) {
    match m {
        2 => (0, 0),
        3 => (-1, -1),
        4 => (-1, -2),
        6 => (-1, -3),
        _ => unreachable!("crystallographic bond orders only"),
    }
}

/// Enumeration backend for crystallographic matrices: generators permute the
/// root system expressed in simple-root coordinates, all arithmetic integral.
fn enumerate_by_roots(matrix: &CoxeterMatrix, cap: usize) -> Result<Enumerated, CoxeterError> {
    let rank = matrix.rank();
    let mut cartan = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        cartan[i][i] = 2;
        for j in (i + 1)..rank {
            let (a, b) = cartan_pair(matrix.entries[i][j]);
            cartan[i][j] = a;
            cartan[j][i] = b;
        }
    }
    let reflect = |i: usize, v: &[i64]| -> Vec<i64> {
        let pairing: i64 = (0..rank).map(|j| cartan[i][j] * v[j]).sum();
        let mut w = v.to_vec();
        w[i] -= pairing;
        w
    };

    // close the simple roots under all reflections; a finite group of order
    // <= cap has at most cap roots, so exceeding cap signals divergence
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut root_ids: HashMap<Vec<i64>, u32> = HashMap::new();
    let mut queue: VecDeque<u32> = VecDeque::new();
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        root_ids.insert(v.clone(), roots.len() as u32);
        queue.push_back(roots.len() as u32);
        roots.push(v);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..rank {
            let img = reflect(i, &roots[r as usize]);
            if !root_ids.contains_key(&img) {
                if roots.len() >= cap {
                    return Err(CoxeterError::CapExceeded { cap });
                }
                root_ids.insert(img.clone(), roots.len() as u32);
                queue.push_back(roots.len() as u32);
                roots.push(img);
            }
        }
    }
    let nroots = roots.len();
    let perms: Vec<Vec<u32>> = (0..rank)
        .map(|i| {
            roots
                .iter()
                .map(|r| root_ids[&reflect(i, r)])
                .collect()
        })
        .collect();

    // breadth-first enumeration over permutations; discovery order is
    // ShortLex because generators are tried in index order
    let identity: Vec<u32> = (0..nroots as u32).collect();
    let mut elems: Vec<Vec<u32>> = vec![identity.clone()];
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::from([(identity, 0)]);
    let mut parent: Vec<(u32, u8)> = vec![(0, 0)];
    let mut right: Vec<u32> = Vec::new();
    let mut qi = 0usize;
    while qi < elems.len() {
        for s in 0..rank {
            let g = &elems[qi];
            let perm = &perms[s];
            let h: Vec<u32> = (0..nroots).map(|r| g[perm[r] as usize]).collect();
            let id = match ids.get(&h) {
                Some(&id) => id,
                None => {
                    if elems.len() >= cap {
                        return Err(CoxeterError::CapExceeded { cap });
                    }
                    let id = elems.len() as u32;
                    ids.insert(h.clone(), id);
                    elems.push(h);
                    parent.push((qi as u32, s as u8 + 1));
                    id
                }
            };
            right.push(id);
        }
        qi += 1;
    }

    let normal_forms = materialize_normal_forms(&parent);
    Ok(Enumerated {
        normal_forms,
        right,
    })
}

fn materialize_normal_forms(parent: &[(u32, u8)]) -> Vec<Vec<u8>> {
    let mut nfs: Vec<Vec<u8>> = Vec::with_capacity(parent.len());
    nfs.push(Vec::new());
    for id in 1..parent.len() {
        let (p, s) = parent[id];
        let mut nf = nfs[p as usize].clone();
        nf.push(s);
        nfs.push(nf);
    }
    nfs
}

/// All words reachable from `word` by braid moves alone (length preserved).
fn braid_closure(
    matrix: &CoxeterMatrix,
    word: &[u8],
) -> Result<BTreeSet<Vec<u8>>, CoxeterError> {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::from([word.to_vec()]);
    let mut queue: VecDeque<Vec<u8>> = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for p in 0..w.len() {
            let i = w[p];
            if p + 1 >= w.len() {
                continue;
            }
            let j = w[p + 1];
            if i == j {
                continue;
            }
            let m = matrix.bond(i, j);
            if m == INFINITE_BOND || p + m as usize > w.len() {
                continue;
            }
            let m = m as usize;
            let alternates = (0..m).all(|k| w[p + k] == if k % 2 == 0 { i } else { j });
            if !alternates {
                continue;
            }
            let mut w2 = w.clone();
            for k in 0..m {
                w2[p + k] = if k % 2 == 0 { j } else { i };
            }
            if !seen.contains(&w2) {
                if seen.len() >= CLOSURE_BOUND {
                    return Err(CoxeterError::ClosureBound(CLOSURE_BOUND));
                }
                seen.insert(w2.clone());
                queue.push_back(w2);
            }
        }
    }
    Ok(seen)
}

/// ShortLex normal form by Tits' algorithm: braid-close, delete any adjacent
/// equal pair, repeat; the lexicographic minimum of the final closure is the
/// normal form.
fn shortlex_by_braid(matrix: &CoxeterMatrix, word: &[u8]) -> Result<Vec<u8>, CoxeterError> {
    let mut w = word.to_vec();
    'outer: loop {
        let closure = braid_closure(matrix, &w)?;
        for u in &closure {
            if let Some(p) = (0..u.len().saturating_sub(1)).find(|&p| u[p] == u[p + 1]) {
                let mut shorter = u.clone();
                shorter.drain(p..p + 2);
                w = shorter;
                continue 'outer;
            }
        }
        return Ok(closure.into_iter().next().unwrap());
    }
}

/// Fallback enumeration backend: element identity decided by braid-move
/// closure on words (Matsumoto/Tits), no geometric realization needed.
fn enumerate_by_braid_closure(
    matrix: &CoxeterMatrix,
    cap: usize,
) -> Result<Enumerated, CoxeterError> {
    let rank = matrix.rank();
    let mut nfs: Vec<Vec<u8>> = vec![Vec::new()];
    let mut ids: HashMap<Vec<u8>, u32> = HashMap::from([(Vec::new(), 0)]);
    let mut right: Vec<u32> = Vec::new();
    let mut qi = 0usize;
    while qi < nfs.len() {
        for s in 1..=rank as u8 {
            let mut w = nfs[qi].clone();
            w.push(s);
            let nf = shortlex_by_braid(matrix, &w)?;
            let id = match ids.get(&nf) {
                Some(&id) => id,
                None => {
                    if nfs.len() >= cap {
                        return Err(CoxeterError::CapExceeded { cap });
                    }
                    let id = nfs.len() as u32;
                    ids.insert(nf.clone(), id);
                    nfs.push(nf);
                    id
                }
            };
            right.push(id);
        }
        qi += 1;
    }
    Ok(Enumerated {
        normal_forms: nfs,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_validation() {
        assert!(CoxeterMatrix::new(vec![]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![2]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![4, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 3]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn rank_one_group() {
        let g = CoxeterGroup::build(CoxeterMatrix::rank_one(), 10).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.longest_element().unwrap().length, 1);
    }

    #[test]
    fn dihedral_orders() {
        for (m, order) in [(2, 4), (3, 6), (4, 8), (5, 10), (6, 12), (7, 14)] {
            let g = CoxeterGroup::build(CoxeterMatrix::dihedral(m).unwrap(), 100).unwrap();
            assert_eq!(g.order(), order, "dihedral m={m}");
            assert_eq!(g.longest_element().unwrap().length, m);
        }
    }

    #[test]
    fn infinite_dihedral_exceeds_cap() {
        let err = CoxeterGroup::build(CoxeterMatrix::dihedral(INFINITE_BOND).unwrap(), 64);
        assert_eq!(err.unwrap_err(), CoxeterError::CapExceeded { cap: 64 });
    }

    #[test]
    fn affine_crystallographic_exceeds_cap() {
        // affine A2: all bonds 3, infinite group, root backend must bail out
        let m = CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
        let err = CoxeterGroup::build(m, 500);
        assert_eq!(err.unwrap_err(), CoxeterError::CapExceeded { cap: 500 });
    }

    #[test]
    fn backends_agree_on_small_crystallographic_groups() {
        for matrix in [
            CoxeterMatrix::dihedral(3).unwrap(),
            CoxeterMatrix::dihedral(4).unwrap(),
            CoxeterMatrix::dihedral(6).unwrap(),
            CoxeterMatrix::f4().submatrix(&[1, 2, 3]).unwrap(),
        ] {
            let by_roots = enumerate_by_roots(&matrix, 10_000).unwrap();
            let by_braid = enumerate_by_braid_closure(&matrix, 10_000).unwrap();
            assert_eq!(by_roots.normal_forms, by_braid.normal_forms);
            assert_eq!(by_roots.right, by_braid.right);
        }
    }

    #[test]
    fn h3_via_braid_backend() {
        let m = CoxeterMatrix::new(vec![vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]).unwrap();
        assert!(!m.is_crystallographic());
        let g = CoxeterGroup::build(m, 200).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.longest_element().unwrap().length, 15);
    }

    #[test]
    fn reduce_examples() {
        let g = CoxeterGroup::f4();
        let e = g.reduce(&Word::new(vec![1, 1])).unwrap();
        assert_eq!(e.id, 0);
        assert!(e.normal_form.is_empty());

        let braid = g.reduce(&Word::new(vec![2, 1, 2])).unwrap();
        assert_eq!(braid.normal_form, Word::new(vec![1, 2, 1]));
        assert_eq!(braid.length, 3);

        assert!(g.is_reduced(&Word::new(vec![1, 2, 3, 2, 1])).unwrap());
        assert!(g.is_reduced(&Word::new(vec![2, 3, 2, 3])).unwrap());
        assert!(!g.is_reduced(&Word::new(vec![1, 1])).unwrap());
    }

    #[test]
    fn letter_out_of_range() {
        let g = CoxeterGroup::f4();
        assert_eq!(
            g.reduce(&Word::new(vec![1, 5])).unwrap_err(),
            CoxeterError::LetterOutOfRange { letter: 5, rank: 4 }
        );
        assert!(g.generator(0).is_err());
    }

    #[test]
    fn multiply_and_inverse() {
        let g = CoxeterGroup::f4();
        let s1 = g.generator(1).unwrap().clone();
        let s2 = g.generator(2).unwrap().clone();
        let prod = g.multiply(&s1, &s2).unwrap();
        assert_eq!(prod.normal_form, Word::new(vec![1, 2]));

        for id in (0..g.order() as u32).step_by(37) {
            let el = g.element(id).unwrap().clone();
            let inv = g.inverse(&el).unwrap().clone();
            assert_eq!(g.multiply(&el, &inv).unwrap().id, 0);
            assert_eq!(inv.normal_form, {
                let rev = el.normal_form.reversed();
                g.reduce(&rev).unwrap().normal_form.clone()
            });
        }

        let foreign = GroupElement {
            id: 3,
            normal_form: Word::new(vec![1, 2]),
            length: 2,
        };
        assert!(g.multiply(&foreign, &foreign).is_err());
    }

    #[test]
    fn descents_examples() {
        let g = CoxeterGroup::f4();
        assert!(g.descents(0, Side::Left).is_empty());
        let s3 = g.generator(3).unwrap().id;
        assert_eq!(g.descents(s3, Side::Left), vec![3]);
        assert_eq!(g.descents(s3, Side::Right), vec![3]);
        let w0 = g.longest_element().unwrap().id;
        assert_eq!(g.descents(w0, Side::Left), vec![1, 2, 3, 4]);
        assert_eq!(g.descents(w0, Side::Right), vec![1, 2, 3, 4]);
    }

    #[test]
    fn word_parsing_roundtrip() {
        let w: Word = "1,2,3,2,1".parse().unwrap();
        assert_eq!(w, Word::new(vec![1, 2, 3, 2, 1]));
        assert_eq!(w.to_string(), "1,2,3,2,1");
        let empty: Word = "".parse().unwrap();
        assert!(empty.is_empty());
        assert!("1,x".parse::<Word>().is_err());
        assert!("0,1".parse::<Word>().is_err());
    }

    #[test]
    fn matrix_json_roundtrip() {
        let m = CoxeterMatrix::f4();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[1,3,2,2],[3,1,4,2],[2,4,1,3],[2,2,3,1]]");
        let back: CoxeterMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CoxeterMatrix>("[[1,2],[3,1]]").is_err());
    }
}
