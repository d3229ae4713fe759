use std::cmp::Ordering;

/// A monomial of the free graded-commutative algebra, stored as one exponent per
/// generator in declaration order.
///
/// Ordering is the canonical basis order: lexicographic on exponent sequences with
/// larger exponents first, so `x1 < x2 < x3` and `x1x2 < x1x3 < x2x3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn unit(generators: usize) -> Self {
        Monomial {
            exps: vec![0; generators],
        }
    }

    pub fn generator(generators: usize, index: usize) -> Self {
        let mut m = Monomial::unit(generators);
        m.exps[index] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u16 {
        self.exps[index]
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub(crate) fn with_exponent(&self, index: usize, value: u16) -> Self {
        let mut exps = self.exps.clone();
        exps[index] = value;
        Monomial { exps }
    }

    /// Pads with zero exponents for generators appended to the presentation.
    pub fn extended(&self, generators: usize) -> Self {
        let mut exps = self.exps.clone();
        exps.resize(generators, 0);
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.exps.cmp(&self.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
