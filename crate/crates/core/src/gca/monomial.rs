use std::cmp::Ordering;

/// A normalized monomial: one exponent per generator of the owning algebra,
/// in the algebra's generator order. Odd generators have exponent 0 or 1.
///
/// Monomials are ordered by degree first; within a degree, a larger exponent
/// on an earlier generator comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: i64,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(num_generators: usize) -> Self {
        Monomial {
            degree: 0,
            exponents: vec![0; num_generators],
        }
    }

    pub(crate) fn from_parts(degree: i64, exponents: Vec<u32>) -> Self {
        Monomial { degree, exponents }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents[index]
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Indices with nonzero exponent, in generator order.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    /// Product in canonical order. `odd` flags the odd generators.
    /// Returns `None` when an odd generator would appear squared, otherwise
    /// the Koszul sign picked up while sorting `self · rhs` into canonical
    /// order.
    pub(crate) fn multiply(&self, rhs: &Monomial, odd: &[bool]) -> Option<(bool, Monomial)> {
        debug_assert_eq!(self.exponents.len(), rhs.exponents.len());
        let mut exponents = Vec::with_capacity(self.exponents.len());
        // number of odd generators of `self` with index > current index
        let mut odd_after: u32 = self.exponents.iter().zip(odd).filter(|(&e, &o)| o && e > 0).count() as u32;
        let mut transpositions: u32 = 0;
        for (i, (&a, &b)) in self.exponents.iter().zip(&rhs.exponents).enumerate() {
            if odd[i] {
                if a > 0 {
                    odd_after -= 1;
                }
                if a > 0 && b > 0 {
                    return None;
                }
                if b > 0 {
                    transpositions += odd_after;
                }
            }
            exponents.push(a + b);
        }
        Some((
            transpositions % 2 == 1,
            Monomial {
                degree: self.degree + rhs.degree,
                exponents,
            },
        ))
    }

    /// Splits `self` into the part on generators with `mask[i] == true` and
    /// the rest, so that `self = sign · first · second`. The returned flag is
    /// `true` when the sign is negative.
    pub(crate) fn split(&self, mask: &[bool], degrees: &[i64], odd: &[bool]) -> (bool, Monomial, Monomial) {
        let n = self.exponents.len();
        let mut first = vec![0; n];
        let mut second = vec![0; n];
        let (mut d1, mut d2) = (0, 0);
        // moving the odd generators of `first` to the front: each one passes the
        // odd generators of `second` that precede it
        let mut second_odd_seen = 0u32;
        let mut transpositions = 0u32;
        for i in 0..n {
            let e = self.exponents[i];
            if e == 0 {
                continue;
            }
            if mask[i] {
                first[i] = e;
                d1 += degrees[i] * i64::from(e);
                if odd[i] {
                    transpositions += second_odd_seen;
                }
            } else {
                second[i] = e;
                d2 += degrees[i] * i64::from(e);
                if odd[i] {
                    second_odd_seen += 1;
                }
            }
        }
        (
            transpositions % 2 == 1,
            Monomial::from_parts(d1, first),
            Monomial::from_parts(d2, second),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
