//! Linear [n,k] codes and the structural predicates used by the LRC and
//! E-matrix machinery.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matrix::{to_zero_based, MatrixGF};

/// Upper bound on `q^k` for codeword enumeration.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

/// Upper bound on the number of column subsets examined by subset-rank routines.
pub const SUBSET_LIMIT: u64 = 20_000_000;

/// An [n,k] linear code with both a generator and a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    k: usize,
    g: MatrixGF,
    h: MatrixGF,
}

/// A binary erasure indicator; `true` marks an erased coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    bits: Vec<bool>,
}

impl ErasurePattern {
    pub fn none(n: usize) -> Self {
        ErasurePattern { bits: vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        ErasurePattern { bits }
    }

    /// Pattern of length `n` erasing the given 1-based coordinates.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for i in to_zero_based(support, n)? {
            bits[i] = true;
        }
        Ok(ErasurePattern { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Erased coordinates, 1-based.
    pub fn support(&self) -> Vec<usize> {
        self.support_0().into_iter().map(|i| i + 1).collect()
    }

    pub fn support_0(&self) -> Vec<usize> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }
}

fn checked_pow(q: u64, k: usize) -> Option<u64> {
    q.checked_pow(k as u32)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

impl LinearCode {
    /// Code defined as the kernel of a full-row-rank parity-check matrix.
    ///
    /// The generator is the kernel basis from reduced row echelon form, so it
    /// is systematic on the non-pivot coordinates of `h`.
    pub fn from_parity_check(h: MatrixGF) -> Result<Self> {
        if h.cols() == 0 {
            return Err(Error::InvalidParameter("code length must be positive".into()));
        }
        if h.rank() != h.rows() {
            return Err(Error::RankDeficientH);
        }
        let g = h.kernel();
        Ok(LinearCode { n: h.cols(), k: g.rows(), g, h })
    }

    /// Code spanned by the rows of `g`, which need not be independent.
    pub fn from_spanning_set(g: &MatrixGF) -> Result<Self> {
        if g.cols() == 0 {
            return Err(Error::InvalidParameter("code length must be positive".into()));
        }
        let (red, pivots) = g.rref();
        let basis = red.select_rows_0(&(0..pivots.len()).collect::<Vec<_>>());
        let h = basis.kernel();
        Ok(LinearCode { n: g.cols(), k: basis.rows(), g: basis, h })
    }

    /// Code with a given full-row-rank generator matrix, kept as is.
    pub fn from_generator(g: MatrixGF) -> Result<Self> {
        if g.rank() != g.rows() {
            return Err(Error::InvalidParameter("generator rows are dependent".into()));
        }
        let h = g.kernel();
        Ok(LinearCode { n: g.cols(), k: g.rows(), g, h })
    }

    /// Uses both matrices as given after checking rank and duality.
    pub fn from_matrices(g: MatrixGF, h: MatrixGF) -> Result<Self> {
        if g.cols() != h.cols() || g.rows() + h.rows() != g.cols() {
            return Err(Error::DimensionMismatch("G and H do not describe the same [n,k]".into()));
        }
        if h.rank() != h.rows() {
            return Err(Error::RankDeficientH);
        }
        if g.rank() != g.rows() || !g.mul(&h.transpose())?.is_zero() {
            return Err(Error::InvalidParameter("G is not a basis of ker H".into()));
        }
        Ok(LinearCode { n: g.cols(), k: g.rows(), g, h })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        self.h.field()
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.g
    }

    pub fn parity_check(&self) -> &MatrixGF {
        &self.h
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn encode(&self, message: &[u32]) -> Vec<u32> {
        self.g.vec_mul(message)
    }

    /// `q^k`, or `None` when it overflows.
    pub fn codeword_count(&self) -> Option<u64> {
        checked_pow(self.field().order() as u64, self.k)
    }

    /// Calls `visit` once per nonzero codeword up to scalar multiples (the
    /// first nonzero message coefficient is 1).
    pub fn for_each_projective_codeword(&self, mut visit: impl FnMut(&[u32])) {
        let q = self.field().order();
        let mut stack = vec![vec![0u32; self.n]; self.k + 1];
        fn rec(
            code: &LinearCode,
            q: u32,
            level: usize,
            stack: &mut [Vec<u32>],
            visit: &mut dyn FnMut(&[u32]),
        ) {
            if level == code.k {
                visit(&stack[level]);
                return;
            }
            let f = code.field();
            for c in 0..q {
                let (lo, hi) = stack.split_at_mut(level + 1);
                let prev = &lo[level];
                let next = &mut hi[0];
                for (j, slot) in next.iter_mut().enumerate() {
                    *slot = f.add(prev[j], f.mul(c, code.g.get(level, j)));
                }
                rec(code, q, level + 1, stack, visit);
            }
        }
        for lead in 0..self.k {
            for j in 0..self.n {
                stack[lead + 1][j] = self.g.get(lead, j);
            }
            rec(self, q, lead + 1, &mut stack, &mut visit);
        }
    }

    /// Minimum distance by enumerating all nonzero codewords.
    pub fn dmin_bruteforce(&self) -> Result<usize> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
        }
        match self.codeword_count() {
            Some(c) if c <= ENUMERATION_LIMIT => {}
            _ => {
                return Err(Error::TooLarge(format!(
                    "q^k = {}^{} codewords",
                    self.field().order(),
                    self.k
                )))
            }
        }
        let mut best = self.n;
        self.for_each_projective_codeword(|cw| {
            let w = cw.iter().filter(|&&v| v != 0).count();
            best = best.min(w);
        });
        Ok(best)
    }

    /// Minimum distance as the smallest number of linearly dependent columns of H.
    pub fn dmin_from_parity_check(&self) -> Result<usize> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
        }
        let r = self.redundancy();
        let work: u64 = (1..=r + 1).map(|w| binomial(self.n, w)).sum();
        if work > SUBSET_LIMIT {
            return Err(Error::TooLarge(format!("{work} column subsets")));
        }
        for w in 1..=r + 1 {
            if (0..self.n).combinations(w).any(|cols| self.h.rank_of_cols_0(&cols) < w) {
                return Ok(w);
            }
        }
        unreachable!("any r+1 columns of an r-row matrix are dependent")
    }

    /// Minimum distance by whichever exact route is cheaper.
    pub fn dmin(&self) -> Result<usize> {
        let enum_cost = self.codeword_count().map(|c| c / (self.field().order() as u64 - 1).max(1));
        let subset_cost: u64 = (1..=self.redundancy() + 1).map(|w| binomial(self.n, w)).sum();
        match enum_cost {
            Some(c) if c <= ENUMERATION_LIMIT && c <= subset_cost => self.dmin_bruteforce(),
            _ => self.dmin_from_parity_check(),
        }
    }

    /// MDS test: every (n-k)-column subset of H is invertible.
    pub fn is_mds(&self) -> Result<bool> {
        let r = self.redundancy();
        if r == 0 {
            return Ok(true);
        }
        if binomial(self.n, r) > SUBSET_LIMIT {
            return Err(Error::TooLarge(format!("C({}, {}) column subsets", self.n, r)));
        }
        Ok((0..self.n).combinations(r).all(|cols| self.h.rank_of_cols_0(&cols) == r))
    }

    /// MDS test through exhaustive minimum distance.
    pub fn is_mds_by_enumeration(&self) -> Result<bool> {
        Ok(self.dmin_bruteforce()? == self.n - self.k + 1)
    }

    /// `J` (1-based, size k, distinct) is an information set iff G|_J is invertible.
    pub fn is_information_set(&self, set: &[usize]) -> Result<bool> {
        let distinct = set.iter().unique().count();
        if set.len() != self.k || distinct != set.len() {
            return Err(Error::WrongSize { expected: self.k, got: distinct });
        }
        let cols = to_zero_based(set, self.n)?;
        Ok(self.g.rank_of_cols_0(&cols) == self.k)
    }

    /// The punctured code C|_S for 1-based coordinates `S`.
    pub fn puncture(&self, set: &[usize]) -> Result<LinearCode> {
        if set.is_empty() {
            return Err(Error::InvalidParameter("puncturing set must be nonempty".into()));
        }
        let sub = self.g.restrict(set)?;
        LinearCode::from_spanning_set(&sub)
    }

    /// Rank criterion: the erased columns of H must be linearly independent.
    pub fn is_correctable(&self, e: &ErasurePattern) -> Result<bool> {
        if e.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: e.len() });
        }
        Ok(self.is_correctable_0(&e.support_0()))
    }

    /// Rank criterion on a 0-based erased coordinate list.
    pub fn is_correctable_0(&self, erased: &[usize]) -> bool {
        erased.len() <= self.redundancy() && self.h.rank_of_cols_0(erased) == erased.len()
    }
}

pub fn from_parity_check(h: MatrixGF) -> Result<LinearCode> {
    LinearCode::from_parity_check(h)
}

pub fn dmin_bruteforce(c: &LinearCode) -> Result<usize> {
    c.dmin_bruteforce()
}

pub fn is_mds(c: &LinearCode) -> Result<bool> {
    c.is_mds()
}

pub fn is_information_set(c: &LinearCode, set: &[usize]) -> Result<bool> {
    c.is_information_set(set)
}

pub fn puncture(c: &LinearCode, set: &[usize]) -> Result<LinearCode> {
    c.puncture(set)
}

pub fn is_correctable(c: &LinearCode, e: &ErasurePattern) -> Result<bool> {
    c.is_correctable(e)
}
