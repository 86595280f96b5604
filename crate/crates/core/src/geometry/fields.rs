//! The 2-, 3- and 4-element fields as explicit operation tables, enough for
//! the projective and symplectic constructions.  The 4-element field is
//! built from the irreducible quadratic x^2 + x + 1 over GF(2), elements
//! encoded 0, 1, w = 2, w+1 = 3.

use super::GeometryError;

#[derive(Debug, Clone)]
pub struct SmallField {
    order: u8,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(order: u8) -> Result<Self, GeometryError> {
        let (add, mul) = match order {
            2 => (
                vec![vec![0, 1], vec![1, 0]],
                vec![vec![0, 0], vec![0, 1]],
            ),
            3 => (
                vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
                vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
            ),
            4 => (
                // characteristic 2: addition is xor of coordinates
                vec![
                    vec![0, 1, 2, 3],
                    vec![1, 0, 3, 2],
                    vec![2, 3, 0, 1],
                    vec![3, 2, 1, 0],
                ],
                // w^2 = w + 1
                vec![
                    vec![0, 0, 0, 0],
                    vec![0, 1, 2, 3],
                    vec![0, 2, 3, 1],
                    vec![0, 3, 1, 2],
                ],
            ),
            q => {
                return Err(GeometryError::Unsupported(format!(
                    "field order {q} (supported: 2, 3, 4)"
                )))
            }
        };
        let mut inv = vec![0u8; order as usize];
        for a in 1..order {
            inv[a as usize] = (1..order)
                .find(|&b| mul[a as usize][b as usize] == 1)
                .expect("every nonzero element is invertible");
        }
        Ok(Self {
            order,
            add,
            mul,
            inv,
        })
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.order
    }

    /// Scales a vector so that its first nonzero coordinate is 1: the
    /// canonical representative of a projective point.
    pub fn normalize(&self, v: &[u8]) -> Option<Vec<u8>> {
        let lead = v.iter().copied().find(|&x| x != 0)?;
        let s = self.inv(lead);
        Some(v.iter().map(|&x| self.mul(s, x)).collect())
    }

    pub fn dot(&self, u: &[u8], v: &[u8]) -> u8 {
        u.iter()
            .zip(v)
            .fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold() {
        for q in [2u8, 3, 4] {
            let f = SmallField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_order() {
        assert!(SmallField::new(5).is_err());
    }

    #[test]
    fn projective_normalization() {
        let f = SmallField::new(4).unwrap();
        assert_eq!(f.normalize(&[0, 0, 0]), None);
        let n = f.normalize(&[2, 3, 1]).unwrap();
        assert_eq!(n[0], 1);
        // scalar multiples normalize identically
        let scaled: Vec<u8> = [2, 3, 1].iter().map(|&x| f.mul(3, x)).collect();
        assert_eq!(f.normalize(&scaled).unwrap(), n);
    }
}
