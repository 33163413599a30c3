//! Distance-optimal (r,δ) information locality codes.
//!
//! Coordinates follow a fixed layout: local groups `S_1, ..., S_{L_c}`, each
//! holding `r` systematic symbols followed by `δ-1` local parities, then the
//! `a = n - L_c (r+δ-1)` global parities. The parity-check matrix is
//!
//! ```text
//! P_1 I  .   .  ...  .
//! .   .  P_2 I  ...  .
//!               ...
//! M_1 0  M_2 0  ...  I_a
//! ```
//!
//! and stacking the `P_j` over the `M_j` next to an identity gives the parity
//! check of the [n', k] parent code, `n' = n - (L_c-1)(δ-1)`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{same_field, Field};
use crate::matrix::MatrixGF;

/// Largest pattern count [`lemma3_check`] will enumerate.
pub const LEMMA3_PATTERN_LIMIT: u64 = 1_000_000;

/// Derived parameters and coordinate sets of an (r,δ) locality layout.
///
/// All coordinate sets are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityProfile {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
    /// L_c = k / r, number of local codes.
    pub local_codes: usize,
    /// n_c = r + δ - 1, length of each local code.
    pub local_length: usize,
    /// L = ⌊n / n_c⌋, number of full column partitions.
    pub partitions: usize,
    /// r̄ = n mod n_c.
    pub remainder: usize,
    /// a = n - L_c n_c, number of global parities.
    pub global_parities: usize,
    /// P_1, ..., P_{L+1}.
    pub parity_sets: Vec<Vec<usize>>,
    /// S_1, ..., S_{L_c}.
    pub local_sets: Vec<Vec<usize>>,
}

impl LocalityProfile {
    pub fn new(n: usize, k: usize, r: usize, delta: usize) -> Result<Self> {
        if r == 0 || k == 0 {
            return Err(Error::InvalidParameter("r and k must be positive".into()));
        }
        if delta < 2 {
            return Err(Error::InvalidParameter("local distance δ must be at least 2".into()));
        }
        if !k.is_multiple_of(r) {
            return Err(Error::IndivisibleLocality { k, r });
        }
        let lc = k / r;
        let nc = r + delta - 1;
        if nc > n || lc * nc > n {
            return Err(Error::InconsistentLength(format!(
                "{lc} local codes of length {nc} do not fit in n = {n}"
            )));
        }
        let l = n / nc;
        let rbar = n % nc;
        let mut parity_sets = Vec::with_capacity(l + 1);
        for j in 1..=l {
            let start = if j <= lc { (j - 1) * nc + r + 1 } else { (j - 1) * nc + 1 };
            parity_sets.push((start..=j * nc).collect());
        }
        parity_sets.push((l * nc + 1..=n).collect());
        let local_sets = (1..=lc).map(|j| ((j - 1) * nc + 1..=j * nc).collect()).collect();
        Ok(LocalityProfile {
            n,
            k,
            r,
            delta,
            local_codes: lc,
            local_length: nc,
            partitions: l,
            remainder: rbar,
            global_parities: n - lc * nc,
            parity_sets,
            local_sets,
        })
    }

    /// n' = n - (L_c - 1)(δ - 1), length of the MDS parent.
    pub fn parent_length(&self) -> usize {
        self.n - (self.local_codes - 1) * (self.delta - 1)
    }

    /// Singleton-like bound n - k + 1 - (⌈k/r⌉ - 1)(δ - 1).
    pub fn dmin_bound(&self) -> usize {
        self.n - self.k + 1 - (self.k.div_ceil(self.r) - 1) * (self.delta - 1)
    }

    /// All parity coordinates, 1-based and increasing.
    pub fn parity_coordinates(&self) -> Vec<usize> {
        self.parity_sets.iter().flatten().copied().collect()
    }
}

pub fn profile(n: usize, k: usize, r: usize, delta: usize) -> Result<LocalityProfile> {
    LocalityProfile::new(n, k, r, delta)
}

/// A distance-optimal LRC in the block layout described at module level.
#[derive(Clone, Debug)]
pub struct LrcCode {
    profile: LocalityProfile,
    local_blocks: Vec<MatrixGF>,
    global_blocks: Vec<MatrixGF>,
    h: MatrixGF,
    code: LinearCode,
    parent_h: MatrixGF,
}

fn assemble_h(profile: &LocalityProfile, field: &Field, p: &[MatrixGF], m: &[MatrixGF]) -> MatrixGF {
    let (r, d1, nc, a) = (profile.r, profile.delta - 1, profile.local_length, profile.global_parities);
    let lc = profile.local_codes;
    let mut h = MatrixGF::zeros(field, lc * d1 + a, profile.n);
    for j in 0..lc {
        h.place(j * d1, j * nc, &p[j]);
        h.place(j * d1, j * nc + r, &MatrixGF::identity(field, d1));
        h.place(lc * d1, j * nc, &m[j]);
    }
    h.place(lc * d1, lc * nc, &MatrixGF::identity(field, a));
    h
}

fn assemble_parent(profile: &LocalityProfile, field: &Field, p: &[MatrixGF], m: &[MatrixGF]) -> MatrixGF {
    let (r, d1, a) = (profile.r, profile.delta - 1, profile.global_parities);
    let k = profile.k;
    let mut h = MatrixGF::zeros(field, d1 + a, k + d1 + a);
    for j in 0..profile.local_codes {
        h.place(0, j * r, &p[j]);
        h.place(d1, j * r, &m[j]);
    }
    h.place(0, k, &MatrixGF::identity(field, d1 + a));
    h
}

impl LrcCode {
    /// Assembles the code from its `P_j` ((δ-1)×r) and `M_j` (a×r) blocks.
    pub fn from_blocks(
        field: &Field,
        profile: LocalityProfile,
        local_blocks: Vec<MatrixGF>,
        global_blocks: Vec<MatrixGF>,
    ) -> Result<Self> {
        let lc = profile.local_codes;
        if local_blocks.len() != lc || global_blocks.len() != lc {
            return Err(Error::DimensionMismatch(format!(
                "expected {lc} P and M blocks, got {} and {}",
                local_blocks.len(),
                global_blocks.len()
            )));
        }
        let (r, d1, a) = (profile.r, profile.delta - 1, profile.global_parities);
        for (name, blocks, rows) in [("P", &local_blocks, d1), ("M", &global_blocks, a)] {
            for (j, b) in blocks.iter().enumerate() {
                if !same_field(b.field(), field) {
                    return Err(Error::FieldMismatch);
                }
                if b.rows() != rows || b.cols() != r {
                    return Err(Error::DimensionMismatch(format!(
                        "{name}_{} is {}x{}, expected {rows}x{r}",
                        j + 1,
                        b.rows(),
                        b.cols()
                    )));
                }
            }
        }
        let h = assemble_h(&profile, field, &local_blocks, &global_blocks);
        let parent_h = assemble_parent(&profile, field, &local_blocks, &global_blocks);
        let code = LinearCode::from_parity_check(h.clone())?;
        Ok(LrcCode { profile, local_blocks, global_blocks, h, code, parent_h })
    }

    /// Reads the blocks out of an existing parity-check matrix. The matrix is
    /// kept verbatim, so [`ComplianceReport::template_ok`] reports whether it
    /// actually has the block form.
    pub fn from_parity_check(h: MatrixGF, r: usize, delta: usize) -> Result<Self> {
        let n = h.cols();
        let k = n.checked_sub(h.rows()).ok_or_else(|| Error::DimensionMismatch("H has more rows than columns".into()))?;
        let profile = LocalityProfile::new(n, k, r, delta)?;
        let (d1, nc, a, lc) = (delta - 1, profile.local_length, profile.global_parities, profile.local_codes);
        if h.rows() != lc * d1 + a {
            return Err(Error::DimensionMismatch(format!(
                "H has {} rows, block layout needs {}",
                h.rows(),
                lc * d1 + a
            )));
        }
        let field = h.field().clone();
        let local_blocks = (0..lc).map(|j| h.block(j * d1, j * nc, d1, r)).collect_vec();
        let global_blocks = (0..lc).map(|j| h.block(lc * d1, j * nc, a, r)).collect_vec();
        let parent_h = assemble_parent(&profile, &field, &local_blocks, &global_blocks);
        let code = LinearCode::from_parity_check(h.clone())?;
        Ok(LrcCode { profile, local_blocks, global_blocks, h, code, parent_h })
    }

    pub fn profile(&self) -> &LocalityProfile {
        &self.profile
    }

    pub fn field(&self) -> &Field {
        self.h.field()
    }

    pub fn local_blocks(&self) -> &[MatrixGF] {
        &self.local_blocks
    }

    pub fn global_blocks(&self) -> &[MatrixGF] {
        &self.global_blocks
    }

    pub fn parity_check(&self) -> &MatrixGF {
        &self.h
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// The parent parity check `(P; M | I_{n'-k})`.
    pub fn parent_parity_check(&self) -> &MatrixGF {
        &self.parent_h
    }

    pub fn parent_code(&self) -> Result<LinearCode> {
        LinearCode::from_parity_check(self.parent_h.clone())
    }

    /// Whether the stored H equals the block template rebuilt from its blocks.
    pub fn matches_template(&self) -> bool {
        assemble_h(&self.profile, self.field(), &self.local_blocks, &self.global_blocks) == self.h
    }
}

/// Reed-Solomon [n', k] code with systematic generator `(I_k | B)` and parity
/// check `(-B^T | I_{n'-k})`. Evaluation points are `1, z, z^2, ...` followed
/// by `0` when `n' = q`.
pub fn reed_solomon(field: &Field, n: usize, k: usize) -> Result<LinearCode> {
    let q = field.order() as usize;
    if k == 0 || k > n || n > q {
        return Err(Error::InvalidParameter(format!("no [{n},{k}] Reed-Solomon code over GF({q})")));
    }
    let points: Vec<u32> = (0..n).map(|j| if j < q - 1 { field.z_pow(j as u64) } else { 0 }).collect();
    let mut vander = MatrixGF::zeros(field, k, n);
    for i in 0..k {
        for (j, &x) in points.iter().enumerate() {
            vander.set(i, j, field.pow(x, i as u64));
        }
    }
    // Row reduction makes the first k columns the identity, since any k
    // distinct points give an invertible Vandermonde block.
    let (g, pivots) = vander.rref();
    debug_assert_eq!(pivots, (0..k).collect_vec());
    let mut h = MatrixGF::zeros(field, n - k, n);
    for i in 0..n - k {
        for j in 0..k {
            h.set(i, j, field.neg(g.get(j, k + i)));
        }
        h.set(i, k + i, 1);
    }
    LinearCode::from_matrices(g, h)
}

/// Rewrites the parity check of `code` as `(A | I_{n-k})` when its last n-k
/// columns are invertible.
pub fn systematize_parity_check(code: &LinearCode) -> Result<MatrixGF> {
    let h = code.parity_check();
    let (n, rk) = (h.cols(), h.rows());
    let order: Vec<usize> = (n - rk..n).chain(0..n - rk).collect();
    let (red, pivots) = h.select_columns_0(&order).rref();
    if pivots != (0..rk).collect_vec() {
        return Err(Error::NotSystematic);
    }
    let mut out = MatrixGF::zeros(h.field(), rk, n);
    for (pos, &c) in order.iter().enumerate() {
        for r in 0..rk {
            out.set(r, c, red.get(r, pos));
        }
    }
    Ok(out)
}

fn is_identity_tail(h: &MatrixGF) -> bool {
    let (rows, cols) = (h.rows(), h.cols());
    (0..rows).all(|r| (0..rows).all(|c| h.get(r, cols - rows + c) == u32::from(r == c)))
}

/// Splits the parity rows of a systematic MDS parent into local and global
/// blocks: the first δ-1 rows of `A` become `P_1..P_{L_c}` (r columns each),
/// the remaining rows become `M_1..M_{L_c}`.
pub fn build_from_mds_parent(parent: &LinearCode, r: usize, delta: usize) -> Result<LrcCode> {
    let (np, k) = (parent.n(), parent.k());
    if r == 0 || delta < 2 {
        return Err(Error::InvalidParameter("need r >= 1 and δ >= 2".into()));
    }
    if k % r != 0 {
        return Err(Error::IndivisibleLocality { k, r });
    }
    if delta - 1 > np - k {
        return Err(Error::ParameterMismatch(format!(
            "δ-1 = {} local parity rows but the parent has only n'-k = {}",
            delta - 1,
            np - k
        )));
    }
    let h = parent.parity_check();
    if !is_identity_tail(h) {
        return Err(Error::NotSystematic);
    }
    if !parent.is_mds()? {
        return Err(Error::NotMds);
    }
    let lc = k / r;
    let n = np + (lc - 1) * (delta - 1);
    let profile = LocalityProfile::new(n, k, r, delta)?;
    let (d1, a) = (delta - 1, np - k - (delta - 1));
    let field = h.field().clone();
    let local_blocks = (0..lc).map(|j| h.block(0, j * r, d1, r)).collect_vec();
    let global_blocks = (0..lc).map(|j| h.block(d1, j * r, a, r)).collect_vec();
    LrcCode::from_blocks(&field, profile, local_blocks, global_blocks)
}

/// Parity-splitting LRC from a Reed-Solomon parent over `field`.
pub fn parity_splitting(field: &Field, n_parent: usize, k: usize, r: usize, delta: usize) -> Result<LrcCode> {
    let parent = reed_solomon(field, n_parent, k)?;
    build_from_mds_parent(&parent, r, delta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplianceReport {
    /// (i) every |S_j| ≤ r + δ - 1.
    pub local_lengths_ok: bool,
    /// (ii) every local code has minimum distance at least δ.
    pub local_distance_ok: bool,
    /// (iii) rank(G restricted to the union of the S_j) = k.
    pub information_coverage_ok: bool,
    /// (iv) every local code is an [r+δ-1, r] MDS code.
    pub local_mds_ok: bool,
    /// (v) H has the block template form.
    pub template_ok: bool,
    /// (vi) the parent parity check defines an MDS code.
    pub parent_mds_ok: bool,
    pub local_dmins: Vec<Option<usize>>,
    pub dmin: Option<usize>,
    pub dmin_bound: usize,
    pub distance_optimal: bool,
}

impl ComplianceReport {
    pub fn all_ok(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.local_lengths_ok, "local code length"),
            (self.local_distance_ok, "local minimum distance"),
            (self.information_coverage_ok, "information set coverage"),
            (self.local_mds_ok, "local MDS"),
            (self.template_ok, "parity-check template"),
            (self.parent_mds_ok, "MDS parent"),
            (self.distance_optimal, "distance optimality"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

pub fn check_compliance(lrc: &LrcCode) -> ComplianceReport {
    let p = &lrc.profile;
    let code = &lrc.code;
    let locals: Vec<Option<LinearCode>> = p.local_sets.iter().map(|s| code.puncture(s).ok()).collect();
    let local_dmins: Vec<Option<usize>> = locals
        .iter()
        .map(|c| c.as_ref().and_then(|c| c.dmin_bruteforce().or_else(|_| c.dmin()).ok()))
        .collect();
    let union: Vec<usize> = p.local_sets.iter().flatten().map(|&i| i - 1).collect();
    let local_mds_ok = locals.iter().all(|c| {
        c.as_ref().is_some_and(|c| {
            c.n() == p.local_length && c.k() == p.r && c.is_mds().unwrap_or(false)
        })
    });
    let parent_mds_ok = lrc.parent_code().and_then(|c| c.is_mds()).unwrap_or(false);
    let dmin = code.dmin().ok();
    let dmin_bound = p.dmin_bound();
    ComplianceReport {
        local_lengths_ok: p.local_sets.iter().all(|s| s.len() < p.r + p.delta),
        local_distance_ok: local_dmins.iter().all(|d| d.is_some_and(|d| d >= p.delta)),
        information_coverage_ok: code.generator().rank_of_cols_0(&union) == p.k,
        local_mds_ok,
        template_ok: lrc.matches_template(),
        parent_mds_ok,
        local_dmins,
        dmin,
        dmin_bound,
        distance_optimal: dmin == Some(dmin_bound),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lemma3Outcome {
    /// Every simultaneous pattern was correctable.
    Holds { patterns: u64 },
    /// 1-based erased coordinates of an uncorrectable pattern.
    Counterexample { support: Vec<usize> },
    /// The hypothesis does not apply to this surplus vector.
    NotApplicable { reason: String },
}

impl Lemma3Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Lemma3Outcome::Holds { .. })
    }
}

/// Checks that every pattern with exactly `δ-1+ν_j` erasures inside each local
/// group `S_j`, and none elsewhere, is correctable. Applies only when
/// `Σν_j ≤ a`, the number of global parities.
pub fn lemma3_check(lrc: &LrcCode, surplus: &[usize]) -> Result<Lemma3Outcome> {
    let p = &lrc.profile;
    if surplus.len() != p.local_codes {
        return Err(Error::InvalidParameter(format!(
            "expected {} surplus values, got {}",
            p.local_codes,
            surplus.len()
        )));
    }
    let total: usize = surplus.iter().sum();
    if total > p.global_parities {
        return Ok(Lemma3Outcome::NotApplicable {
            reason: format!("Σν = {total} exceeds the {} global parities", p.global_parities),
        });
    }
    let per_group: Vec<usize> = surplus.iter().map(|nu| p.delta - 1 + nu).collect();
    if let Some(j) = per_group.iter().position(|&e| e > p.local_length) {
        return Ok(Lemma3Outcome::NotApplicable {
            reason: format!("{} erasures do not fit in local group {}", per_group[j], j + 1),
        });
    }
    let count = per_group
        .iter()
        .map(|&e| binomial(p.local_length, e))
        .try_fold(1u64, |acc, c| acc.checked_mul(c))
        .filter(|&c| c <= LEMMA3_PATTERN_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("more than {LEMMA3_PATTERN_LIMIT} patterns")))?;
    let choices: Vec<Vec<Vec<usize>>> = p
        .local_sets
        .iter()
        .zip(&per_group)
        .map(|(s, &e)| s.iter().map(|&i| i - 1).combinations(e).collect())
        .collect();
    for combo in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let erased: Vec<usize> = combo.into_iter().flatten().copied().collect();
        if !lrc.code.is_correctable_0(&erased) {
            return Ok(Lemma3Outcome::Counterexample { support: erased.iter().map(|i| i + 1).collect() });
        }
    }
    Ok(Lemma3Outcome::Holds { patterns: count })
}

/// All surplus vectors with `Σν_j ≤ a` and `δ-1+ν_j ≤ n_c`.
pub fn feasible_surpluses(profile: &LocalityProfile) -> Vec<Vec<usize>> {
    let max_nu = profile.local_length - (profile.delta - 1);
    (0..profile.local_codes)
        .map(|_| 0..=max_nu)
        .multi_cartesian_product()
        .filter(|v| v.iter().sum::<usize>() <= profile.global_parities)
        .collect()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}
