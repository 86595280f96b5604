//! Standard parabolic subgroups, double cosets and minimal-length
//! representatives, plus the batch verifier for printed double-coset claims.

use crate::coxeter::{CoxeterError, CoxeterGroup, GroupElement, Word};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// A subset of the generator indices (1-based), kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct GeneratorSubset(Vec<u8>);

impl GeneratorSubset {
    /// Validation against a concrete rank happens in the operations; the raw
    /// constructor only rejects the 0 index.
    pub fn new(indices: impl IntoIterator<Item = u8>) -> Result<Self, CoxeterError> {
        let mut v: Vec<u8> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.first() == Some(&0) {
            return Err(CoxeterError::LetterOutOfRange {
                letter: 0,
                rank: u8::MAX as usize,
            });
        }
        Ok(Self(v))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_rank(&self, group: &CoxeterGroup) -> Result<(), CoxeterError> {
        match self.0.last() {
            Some(&s) if s as usize > group.rank() => Err(CoxeterError::LetterOutOfRange {
                letter: s,
                rank: group.rank(),
            }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<u8>> for GeneratorSubset {
    type Error = CoxeterError;
    fn try_from(v: Vec<u8>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<GeneratorSubset> for Vec<u8> {
    fn from(s: GeneratorSubset) -> Self {
        s.0
    }
}

/// One double coset W_I g W_J: its unique minimal representative and the
/// full member set (extensional storage is trivial at these group sizes).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleCosetRecord {
    pub left: GeneratorSubset,
    pub right: GeneratorSubset,
    pub min_rep: GroupElement,
    pub member_ids: Vec<u32>,
}

/// Element ids of the standard parabolic subgroup W_J: the closure of the
/// identity under right multiplication by J.
pub fn parabolic_elements(
    group: &CoxeterGroup,
    subset: &GeneratorSubset,
) -> Result<Vec<u32>, CoxeterError> {
    subset.check_rank(group)?;
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0u32]);
    let mut out = vec![0u32];
    while let Some(g) = queue.pop_front() {
        for &s in subset.indices() {
            let h = group.right_mul(g, s);
            if !seen[h as usize] {
                seen[h as usize] = true;
                out.push(h);
                queue.push_back(h);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Greedy descent to the minimal-length element of W_I g W_J: repeatedly
/// strip a descent on either side.  The result does not depend on the order
/// in which descents are taken (tested exhaustively against the scan-based
/// minimum).
pub fn min_double_coset_rep(
    group: &CoxeterGroup,
    left: &GeneratorSubset,
    g: u32,
    right: &GeneratorSubset,
) -> Result<u32, CoxeterError> {
    left.check_rank(group)?;
    right.check_rank(group)?;
    if g as usize >= group.order() {
        return Err(CoxeterError::UnknownElement(g));
    }
    let mut cur = g;
    'outer: loop {
        let len = group.length(cur);
        for &s in left.indices() {
            let h = group.left_mul(cur, s);
            if group.length(h) < len {
                cur = h;
                continue 'outer;
            }
        }
        for &t in right.indices() {
            let h = group.right_mul(cur, t);
            if group.length(h) < len {
                cur = h;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// Partition of the whole group into (W_I, W_J) double cosets, each with its
/// minimal representative found by exhaustive scan over the members.
/// Records are sorted by (min_rep length, min_rep ShortLex).
pub fn enumerate_double_cosets(
    group: &CoxeterGroup,
    left: &GeneratorSubset,
    right: &GeneratorSubset,
) -> Result<Vec<DoubleCosetRecord>, CoxeterError> {
    left.check_rank(group)?;
    right.check_rank(group)?;
    let n = group.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut records = Vec::new();
    for seed in 0..n as u32 {
        if coset_of[seed as usize] != u32::MAX {
            continue;
        }
        let idx = records.len() as u32;
        let mut members = vec![seed];
        coset_of[seed as usize] = idx;
        let mut queue = VecDeque::from([seed]);
        while let Some(g) = queue.pop_front() {
            for &s in left.indices() {
                let h = group.left_mul(g, s);
                if coset_of[h as usize] == u32::MAX {
                    coset_of[h as usize] = idx;
                    members.push(h);
                    queue.push_back(h);
                }
            }
            for &t in right.indices() {
                let h = group.right_mul(g, t);
                if coset_of[h as usize] == u32::MAX {
                    coset_of[h as usize] = idx;
                    members.push(h);
                    queue.push_back(h);
                }
            }
        }
        members.sort_unstable();
        // element ids are in ShortLex order, so the first member of minimal
        // length is the ShortLex-least minimum
        let min_id = *members
            .iter()
            .min_by_key(|&&m| (group.length(m), m))
            .unwrap();
        debug_assert_eq!(
            members
                .iter()
                .filter(|&&m| group.length(m) == group.length(min_id))
                .count(),
            1,
            "double coset minimum must be unique"
        );
        records.push(DoubleCosetRecord {
            left: left.clone(),
            right: right.clone(),
            min_rep: group.element(min_id)?.clone(),
            member_ids: members,
        });
    }
    records.sort_by_key(|r| (r.min_rep.length, r.min_rep.id));
    Ok(records)
}

/// One claimed double coset W_left (word) W_right, as read from a claims
/// file or the shipped list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaClaim {
    pub left: GeneratorSubset,
    pub word: Word,
    pub right: GeneratorSubset,
}

/// Verdict for one claim: the word must be reduced and must be the unique
/// minimal-length element of its double coset (decided by exhaustive scan,
/// with the greedy descent cross-checked).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: LemmaClaim,
    pub word_length: u32,
    pub element_length: u32,
    pub reduced: bool,
    pub is_min_rep: bool,
    pub coset_size: u32,
    pub coset_min_rep: Word,
    pub coset_min_length: u32,
    pub greedy_agrees: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaReport {
    pub claims: Vec<ClaimVerdict>,
    pub pass: bool,
}

/// Checks every claim by full enumeration of its double coset and an
/// explicit minimum-length scan, independent of the greedy descent.
pub fn verify_lemma_reps(
    group: &CoxeterGroup,
    claims: &[LemmaClaim],
) -> Result<LemmaReport, CoxeterError> {
    let mut verdicts = Vec::with_capacity(claims.len());
    for claim in claims {
        let element = group.reduce(&claim.word)?.clone();
        let reduced = element.length as usize == claim.word.len();
        let records = enumerate_double_cosets(group, &claim.left, &claim.right)?;
        let record = records
            .iter()
            .find(|r| r.member_ids.binary_search(&element.id).is_ok())
            .expect("partition covers the group");
        let is_min_rep = record.min_rep.id == element.id;
        let greedy = min_double_coset_rep(group, &claim.left, element.id, &claim.right)?;
        verdicts.push(ClaimVerdict {
            claim: claim.clone(),
            word_length: claim.word.len() as u32,
            element_length: element.length,
            reduced,
            is_min_rep,
            coset_size: record.member_ids.len() as u32,
            coset_min_rep: record.min_rep.normal_form.clone(),
            coset_min_length: record.min_rep.length,
            greedy_agrees: greedy == record.min_rep.id,
            pass: reduced && is_min_rep,
        });
    }
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(LemmaReport {
        claims: verdicts,
        pass,
    })
}

/// The eight double-coset claims shipped as the default list: blocks
/// A = s1 s2 s3 s2 s1 and B = s4 s3 s2 s3 s4 in alternating concatenations
/// of one to four blocks, flanked by W_{2,3,4} / W_{1,2,3} as printed.
pub fn shipped_lemma_claims() -> Vec<LemmaClaim> {
    let a: Vec<u8> = vec![1, 2, 3, 2, 1];
    let b: Vec<u8> = vec![4, 3, 2, 3, 4];
    let p123 = GeneratorSubset::new([1, 2, 3]).unwrap();
    let p234 = GeneratorSubset::new([2, 3, 4]).unwrap();
    let cat = |blocks: &[&[u8]]| Word::new(blocks.concat());
    vec![
        LemmaClaim {
            left: p234.clone(),
            word: cat(&[&a]),
            right: p234.clone(),
        },
        LemmaClaim {
            left: p123.clone(),
            word: cat(&[&b]),
            right: p123.clone(),
        },
        LemmaClaim {
            left: p123.clone(),
            word: cat(&[&b, &a]),
            right: p234.clone(),
        },
        LemmaClaim {
            left: p234.clone(),
            word: cat(&[&a, &b]),
            right: p123.clone(),
        },
        LemmaClaim {
            left: p234.clone(),
            word: cat(&[&a, &b, &a]),
            right: p234.clone(),
        },
        LemmaClaim {
            left: p123.clone(),
            word: cat(&[&b, &a, &b]),
            right: p123.clone(),
        },
        LemmaClaim {
            left: p234.clone(),
            word: cat(&[&a, &b, &a, &b]),
            right: p123.clone(),
        },
        LemmaClaim {
            left: p123,
            word: cat(&[&b, &a, &b, &a]),
            right: p234,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabolic_closure_sizes() {
        let g = CoxeterGroup::f4();
        let cases: [(&[u8], usize); 5] = [
            (&[], 1),
            (&[2, 3, 4], 48),
            (&[1, 2, 3], 48),
            (&[1, 3, 4], 12),
            (&[1, 2, 4], 12),
        ];
        for (subset, expected) in cases {
            let j = GeneratorSubset::new(subset.iter().copied()).unwrap();
            assert_eq!(parabolic_elements(&g, &j).unwrap().len(), expected);
        }
    }

    #[test]
    fn subset_validation() {
        let g = CoxeterGroup::f4();
        let bad = GeneratorSubset::new([5]).unwrap();
        assert!(parabolic_elements(&g, &bad).is_err());
        assert!(GeneratorSubset::new([0]).is_err());
        assert_eq!(
            GeneratorSubset::new([3, 2, 2]).unwrap().indices(),
            &[2, 3]
        );
    }

    #[test]
    fn min_rep_identity_and_membership() {
        let g = CoxeterGroup::f4();
        let i = GeneratorSubset::new([1, 2]).unwrap();
        let j = GeneratorSubset::new([3, 4]).unwrap();
        assert_eq!(min_double_coset_rep(&g, &i, 0, &j).unwrap(), 0);
        let s2 = g.generator(2).unwrap().id;
        let p234 = GeneratorSubset::new([2, 3, 4]).unwrap();
        assert_eq!(min_double_coset_rep(&g, &p234, s2, &p234).unwrap(), 0);
    }

    #[test]
    fn trivial_subgroups_give_singletons() {
        let g = CoxeterGroup::f4();
        let empty = GeneratorSubset::empty();
        let records = enumerate_double_cosets(&g, &empty, &empty).unwrap();
        assert_eq!(records.len(), 1152);
        assert!(records.iter().all(|r| r.member_ids.len() == 1));
    }

    #[test]
    fn failing_claims_are_reported() {
        let g = CoxeterGroup::f4();
        let p234 = GeneratorSubset::new([2, 3, 4]).unwrap();
        let claims = vec![
            LemmaClaim {
                left: p234.clone(),
                word: Word::new(vec![2]),
                right: p234.clone(),
            },
            LemmaClaim {
                left: GeneratorSubset::empty(),
                word: Word::new(vec![1, 1]),
                right: GeneratorSubset::empty(),
            },
        ];
        let report = verify_lemma_reps(&g, &claims).unwrap();
        assert!(!report.pass);
        assert!(report.claims[0].reduced);
        assert!(!report.claims[0].is_min_rep);
        assert_eq!(report.claims[0].coset_min_length, 0);
        assert!(!report.claims[1].reduced);
    }

    #[test]
    fn claims_with_bad_letters_error() {
        let g = CoxeterGroup::f4();
        let claims = vec![LemmaClaim {
            left: GeneratorSubset::empty(),
            word: Word::new(vec![9]),
            right: GeneratorSubset::empty(),
        }];
        assert!(verify_lemma_reps(&g, &claims).is_err());
    }
}
