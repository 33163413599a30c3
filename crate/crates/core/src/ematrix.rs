//! Construction and validation of the binary (n-k)-regular matrix `E` whose
//! rows are erasure patterns correctable by an LRC.
//!
//! `E` is laid out in `L+1` row and column partitions: `L` of size `n_c` and a
//! last one of size `r̄`. The top-left `n_c L × n_c L` part is `Ẽ`, the
//! top-right column block is `Z`, the bottom-left row block is `W` and the
//! bottom-right corner is `O`.
//!
//! Step a fills `Ẽ` block-circulantly with regular seed matrices, puts the
//! parity coordinates in every row of `(W | O)` and leaves `Z` empty. Every row
//! then has weight n-k, but the parity columns of the first `L` partitions are
//! too heavy and the `Z` columns too light. Step b runs `r̄` iterations; each
//! moves one 1 per parity column of `Ẽ` into the next `Z` column, picking rows
//! so that every pattern stays correctable.

use std::collections::HashSet;
use std::ops::Range;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::lrc::{check_compliance, LocalityProfile, LrcCode};
use crate::matrix::BinaryMatrix;

/// Default node budget for [`brute_force_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Seed weights and matrices for Step a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepAConfig {
    /// m = ⌊(n-k)/L⌋.
    pub base_weight: usize,
    /// t = (n-k) mod L; the first t seeds have weight m+1.
    pub raised_count: usize,
    /// ρ_1, ..., ρ_L.
    pub rho: Vec<usize>,
    /// π_1, ..., π_L, each ρ_l-regular of order n_c.
    pub seeds: Vec<BinaryMatrix>,
}

/// Circulant 0/1 matrix whose first row has `weight` consecutive ones from column 1.
pub fn circulant(order: usize, weight: usize) -> Result<BinaryMatrix> {
    if weight > order {
        return Err(Error::InfeasibleRho { rho: weight, order });
    }
    let mut m = BinaryMatrix::zeros(order, order);
    for i in 0..order {
        for s in 0..weight {
            m.set(i, (i + s) % order, true);
        }
    }
    Ok(m)
}

/// An n×n erasure-pattern matrix together with its partition geometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMatrix {
    matrix: BinaryMatrix,
    local_length: usize,
    partitions: usize,
    remainder: usize,
}

impl EMatrix {
    pub fn new(matrix: BinaryMatrix, profile: &LocalityProfile) -> Result<Self> {
        if matrix.rows() != profile.n || matrix.cols() != profile.n {
            return Err(Error::DimensionMismatch(format!(
                "E is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                profile.n,
                profile.n
            )));
        }
        Ok(EMatrix {
            matrix,
            local_length: profile.local_length,
            partitions: profile.partitions,
            remainder: profile.remainder,
        })
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BinaryMatrix {
        self.matrix
    }

    /// 0-based row (and column) ranges of the L+1 partitions.
    pub fn partition_ranges(&self) -> Vec<Range<usize>> {
        let nc = self.local_length;
        let body = nc * self.partitions;
        (0..self.partitions)
            .map(|l| l * nc..(l + 1) * nc)
            .chain(std::iter::once(body..body + self.remainder))
            .collect()
    }

    fn body(&self) -> usize {
        self.local_length * self.partitions
    }

    pub fn e_tilde(&self) -> BinaryMatrix {
        self.matrix.block(0, 0, self.body(), self.body())
    }

    pub fn z(&self) -> BinaryMatrix {
        self.matrix.block(0, self.body(), self.body(), self.remainder)
    }

    pub fn w(&self) -> BinaryMatrix {
        self.matrix.block(self.body(), 0, self.remainder, self.body())
    }

    pub fn o(&self) -> BinaryMatrix {
        self.matrix.block(self.body(), self.body(), self.remainder, self.remainder)
    }
}

/// Circulant matrix whose first row has its ones at the 0-based `support`.
pub fn circulant_with_support(order: usize, support: &[usize]) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(order, order);
    for i in 0..order {
        for &s in support {
            m.set(i, (i + s) % order, true);
        }
    }
    m
}

fn seed_weights(profile: &LocalityProfile) -> (usize, usize, Vec<usize>) {
    let (n, k, l) = (profile.n, profile.k, profile.partitions);
    let m = (n - k) / l;
    let t = (n - k) % l;
    (m, t, (0..l).map(|i| if i < t { m + 1 } else { m }).collect())
}

/// Step a: block-circulant `Ẽ`, empty `Z`, parity indicator rows in `(W | O)`.
/// The seeds are circulants with consecutive ones from column 1.
pub fn step_a_init(profile: &LocalityProfile) -> Result<(EMatrix, StepAConfig)> {
    let (_, _, rho) = seed_weights(profile);
    let seeds = rho.iter().map(|&w| circulant(profile.local_length, w)).collect::<Result<Vec<_>>>()?;
    step_a_with_seeds(profile, seeds)
}

/// Step a with explicit seeds π_1..π_L, each ρ_l-regular of order n_c.
pub fn step_a_with_seeds(profile: &LocalityProfile, seeds: Vec<BinaryMatrix>) -> Result<(EMatrix, StepAConfig)> {
    let (n, nc, l) = (profile.n, profile.local_length, profile.partitions);
    let (m, t, rho) = seed_weights(profile);
    if seeds.len() != l {
        return Err(Error::InvalidParameter(format!("{} seeds given, L = {l}", seeds.len())));
    }
    for (i, (seed, &w)) in seeds.iter().zip(&rho).enumerate() {
        if w > nc {
            return Err(Error::InfeasibleRho { rho: w, order: nc });
        }
        if seed.rows() != nc || seed.cols() != nc || !seed.is_regular(w) {
            return Err(Error::InvalidParameter(format!("seed {} is not {w}-regular of order {nc}", i + 1)));
        }
    }
    let mut e = BinaryMatrix::zeros(n, n);
    for i in 0..l {
        for h in 0..l {
            let seed = &seeds[(h + l - i) % l];
            for r in 0..nc {
                for c in 0..nc {
                    e.set(i * nc + r, h * nc + c, seed.get(r, c));
                }
            }
        }
    }
    let parity = profile.parity_coordinates();
    for row in nc * l..n {
        for &p in &parity {
            e.set(row, p - 1, true);
        }
    }
    let config = StepAConfig { base_weight: m, raised_count: t, rho, seeds };
    Ok((EMatrix::new(e, profile)?, config))
}

/// Upper bound on the seed choices [`construct`] tries.
pub const SEED_SEARCH_LIMIT: usize = 4096;

/// Circulant seed choices in the order [`construct`] tries them: first rows
/// run over all ρ_l-subsets in lexicographic order, so the consecutive-ones
/// default comes first.
pub fn seed_candidates(profile: &LocalityProfile) -> Result<Vec<Vec<BinaryMatrix>>> {
    let nc = profile.local_length;
    let (_, _, rho) = seed_weights(profile);
    if let Some(&w) = rho.iter().find(|&&w| w > nc) {
        return Err(Error::InfeasibleRho { rho: w, order: nc });
    }
    Ok(rho
        .iter()
        .map(|&w| (0..nc).combinations(w).map(|s| circulant_with_support(nc, &s)).collect::<Vec<_>>())
        .multi_cartesian_product()
        .take(SEED_SEARCH_LIMIT)
        .collect())
}

/// One 1 moved from a parity column of `Ẽ` into a column of `Z`. 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swap {
    pub row: usize,
    pub from_col: usize,
    pub to_col: usize,
}

/// Swaps made in one row partition during one iteration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSwaps {
    /// Row partition i, 1-based.
    pub partition: usize,
    /// s^(i): a single 1 at the active column partition.
    pub shift: Vec<u8>,
    /// Active column partition j, 1-based.
    pub column_partition: usize,
    /// R^(i)_j, 1-based rows.
    pub rows: Vec<usize>,
    pub swaps: Vec<Swap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationTrace {
    /// j', 1-based.
    pub iteration: usize,
    pub partitions: Vec<PartitionSwaps>,
}

/// Auditable record of Step b.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapTrace {
    pub iterations: Vec<IterationTrace>,
}

impl SwapTrace {
    pub fn swap_count(&self) -> usize {
        self.iterations.iter().flat_map(|it| &it.partitions).map(|p| p.swaps.len()).sum()
    }
}

/// Explicit swap choices for one iteration, used to replay a known schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationPlan {
    /// Active column partition of the first row partition (the 1 in s^(1)), 1-based.
    pub column_partition: usize,
    /// Per row partition, the `(row, parity column)` pairs to swap, 1-based.
    pub assignments: Vec<Vec<(usize, usize)>>,
}

struct SwapRules<'a> {
    profile: &'a LocalityProfile,
    code: &'a LinearCode,
    base_weight: usize,
}

impl SwapRules<'_> {
    fn nc(&self) -> usize {
        self.profile.local_length
    }

    fn rows_of(&self, partition: usize) -> Range<usize> {
        partition * self.nc()..(partition + 1) * self.nc()
    }

    fn block_weight(&self, e: &BinaryMatrix, row: usize, block: usize) -> usize {
        e.segment_weight(row, block * self.nc(), self.nc())
    }

    /// Rows of `partition` the weight guard allows to give up a 1 in `block`,
    /// or `None` if the guard rules the block out entirely.
    fn eligible_rows(&self, e: &BinaryMatrix, partition: usize, block: usize) -> Option<Vec<usize>> {
        let d1 = self.profile.delta - 1;
        let rows = self.rows_of(partition);
        if block < self.profile.local_codes {
            Some(rows.filter(|&r| self.block_weight(e, r, block) > d1).collect())
        } else {
            let floor = self.base_weight.saturating_sub(d1).max(1);
            rows.clone()
                .all(|r| self.block_weight(e, r, block) >= floor)
                .then(|| rows.collect())
        }
    }

    fn swap_keeps_correctable(&self, e: &BinaryMatrix, row: usize, from: usize, to: usize) -> bool {
        let erased: Vec<usize> = (0..e.cols())
            .filter(|&c| c == to || (c != from && e.get(row, c)))
            .collect();
        self.code.is_correctable_0(&erased)
    }

    /// Lexicographically first row set R with a distinct-column assignment.
    fn plan_partition(&self, e: &BinaryMatrix, partition: usize, block: usize, to: usize) -> Option<Vec<(usize, usize)>> {
        let parity: Vec<usize> = self.profile.parity_sets[block].iter().map(|p| p - 1).collect();
        let rows = self.eligible_rows(e, partition, block)?;
        let edges: Vec<Vec<usize>> = rows
            .iter()
            .map(|&r| {
                parity
                    .iter()
                    .copied()
                    .filter(|&p| e.get(r, p) && self.swap_keeps_correctable(e, r, p, to))
                    .collect()
            })
            .collect();
        fn choose(
            idx: usize,
            needed: usize,
            rows: &[usize],
            edges: &[Vec<usize>],
            used: &mut Vec<usize>,
            acc: &mut Vec<(usize, usize)>,
        ) -> bool {
            if needed == 0 {
                return true;
            }
            if rows.len() - idx < needed {
                return false;
            }
            for i in idx..rows.len() {
                if rows.len() - i < needed {
                    break;
                }
                for &p in &edges[i] {
                    if used.contains(&p) {
                        continue;
                    }
                    used.push(p);
                    acc.push((rows[i], p));
                    if choose(i + 1, needed - 1, rows, edges, used, acc) {
                        return true;
                    }
                    used.pop();
                    acc.pop();
                }
            }
            false
        }
        let mut acc = Vec::new();
        choose(0, parity.len(), &rows, &edges, &mut Vec::new(), &mut acc).then_some(acc)
    }

    fn record(&self, partition: usize, block: usize, pairs: &[(usize, usize)], to: usize) -> PartitionSwaps {
        let l = self.profile.partitions;
        let mut shift = vec![0u8; l];
        shift[block] = 1;
        PartitionSwaps {
            partition: partition + 1,
            shift,
            column_partition: block + 1,
            rows: pairs.iter().map(|&(r, _)| r + 1).collect(),
            swaps: pairs.iter().map(|&(r, p)| Swap { row: r + 1, from_col: p + 1, to_col: to + 1 }).collect(),
        }
    }

    fn search(&self, e: &mut BinaryMatrix, iteration: usize, trace: &mut Vec<IterationTrace>, stuck: &mut usize) -> bool {
        let (l, rbar) = (self.profile.partitions, self.profile.remainder);
        if iteration == rbar {
            return true;
        }
        let to = self.nc() * l + iteration;
        'first: for j in 0..l {
            let mut next = e.clone();
            let mut parts = Vec::with_capacity(l);
            for i in 0..l {
                let block = (j + i) % l;
                let Some(pairs) = self.plan_partition(&next, i, block, to) else {
                    continue 'first;
                };
                for &(r, p) in &pairs {
                    next.set(r, p, false);
                    next.set(r, to, true);
                }
                parts.push(self.record(i, block, &pairs, to));
            }
            if !all_rows_correctable(&next, self.code) {
                continue;
            }
            trace.push(IterationTrace { iteration: iteration + 1, partitions: parts });
            if self.search(&mut next, iteration + 1, trace, stuck) {
                *e = next;
                return true;
            }
            trace.pop();
        }
        *stuck = (*stuck).max(iteration + 1);
        false
    }
}

fn check_step_a_shape(e: &EMatrix, profile: &LocalityProfile) -> Result<()> {
    if e.matrix.rows() != profile.n
        || e.local_length != profile.local_length
        || e.partitions != profile.partitions
        || e.remainder != profile.remainder
    {
        return Err(Error::DimensionMismatch("E does not match the code's partition layout".into()));
    }
    Ok(())
}

/// Step b: `r̄` iterations of swaps from the parity columns of `Ẽ` into `Z`.
///
/// Candidates for s^(1) are tried in increasing column-partition order, rows in
/// increasing index and parity columns by a first-fit matching. Any dead end
/// backtracks, across iterations if needed.
pub fn step_b_swaps(e: &EMatrix, lrc: &LrcCode) -> Result<(EMatrix, SwapTrace)> {
    let profile = lrc.profile();
    check_step_a_shape(e, profile)?;
    let (_, config) = step_a_init(profile)?;
    let rules = SwapRules { profile, code: lrc.code(), base_weight: config.base_weight };
    let mut matrix = e.matrix.clone();
    let mut iterations = Vec::new();
    let mut stuck = 0;
    if !rules.search(&mut matrix, 0, &mut iterations, &mut stuck) {
        return Err(Error::SwapExhausted { iteration: stuck });
    }
    Ok((EMatrix { matrix, ..e.clone() }, SwapTrace { iterations }))
}

/// Replays a given swap schedule, enforcing the same guards as [`step_b_swaps`].
pub fn apply_swap_plan(e: &EMatrix, lrc: &LrcCode, plan: &[IterationPlan]) -> Result<(EMatrix, SwapTrace)> {
    let profile = lrc.profile();
    check_step_a_shape(e, profile)?;
    let (_, config) = step_a_init(profile)?;
    let rules = SwapRules { profile, code: lrc.code(), base_weight: config.base_weight };
    let (l, nc) = (profile.partitions, profile.local_length);
    if plan.len() > profile.remainder {
        return Err(Error::InvalidParameter(format!("{} iterations planned, r̄ = {}", plan.len(), profile.remainder)));
    }
    let bad = |msg: String| Error::InvalidParameter(msg);
    let mut matrix = e.matrix.clone();
    let mut iterations = Vec::new();
    for (it, step) in plan.iter().enumerate() {
        if step.column_partition == 0 || step.column_partition > l || step.assignments.len() != l {
            return Err(bad(format!("iteration {}: malformed plan", it + 1)));
        }
        let to = nc * l + it;
        let mut parts = Vec::new();
        for (i, pairs) in step.assignments.iter().enumerate() {
            let block = (step.column_partition - 1 + i) % l;
            let parity: Vec<usize> = profile.parity_sets[block].iter().map(|p| p - 1).collect();
            let eligible = rules
                .eligible_rows(&matrix, i, block)
                .ok_or_else(|| bad(format!("iteration {}: weight guard excludes partition {}", it + 1, i + 1)))?;
            let zero_based: Vec<(usize, usize)> = pairs.iter().map(|&(r, p)| (r.wrapping_sub(1), p.wrapping_sub(1))).collect();
            let cols: Vec<usize> = zero_based.iter().map(|&(_, p)| p).sorted().collect();
            if cols != parity {
                return Err(bad(format!("iteration {}: partition {} must use each of P_{} once", it + 1, i + 1, block + 1)));
            }
            if zero_based.iter().map(|&(r, _)| r).unique().count() != zero_based.len() {
                return Err(bad(format!("iteration {}: repeated row", it + 1)));
            }
            for &(r, p) in &zero_based {
                if !eligible.contains(&r) {
                    return Err(bad(format!("iteration {}: row {} fails the weight guard", it + 1, r + 1)));
                }
                if !matrix.get(r, p) {
                    return Err(bad(format!("iteration {}: entry ({}, {}) is not 1", it + 1, r + 1, p + 1)));
                }
                if !rules.swap_keeps_correctable(&matrix, r, p, to) {
                    return Err(bad(format!("iteration {}: row {} becomes uncorrectable", it + 1, r + 1)));
                }
            }
            for &(r, p) in &zero_based {
                matrix.set(r, p, false);
                matrix.set(r, to, true);
            }
            parts.push(rules.record(i, block, &zero_based, to));
        }
        iterations.push(IterationTrace { iteration: it + 1, partitions: parts });
    }
    Ok((EMatrix { matrix, ..e.clone() }, SwapTrace { iterations }))
}

/// Outcome of [`construct`], keeping the Step a state for inspection.
#[derive(Clone, Debug)]
pub struct Construction {
    pub step_a: EMatrix,
    pub config: StepAConfig,
    pub matrix: EMatrix,
    pub trace: SwapTrace,
}

fn all_rows_correctable(e: &BinaryMatrix, code: &LinearCode) -> bool {
    (0..e.rows()).all(|r| {
        let erased: Vec<usize> = (0..e.cols()).filter(|&c| e.get(r, c)).collect();
        code.is_correctable_0(&erased)
    })
}

/// Steps a and b for a compliant code, followed by validation.
///
/// Seeds are tried in [`seed_candidates`] order until Step a yields
/// correctable rows and Step b completes; for most codes the first choice works.
pub fn construct(lrc: &LrcCode) -> Result<Construction> {
    let report = check_compliance(lrc);
    if !report.all_ok() {
        return Err(Error::NonCompliantCode(report.failures().join(", ")));
    }
    let profile = lrc.profile();
    let candidates = seed_candidates(profile)?;
    let tried = candidates.len();
    let mut deepest = None;
    for seeds in candidates {
        let (step_a, config) = step_a_with_seeds(profile, seeds)?;
        if !all_rows_correctable(step_a.matrix(), lrc.code()) {
            continue;
        }
        match step_b_swaps(&step_a, lrc) {
            Ok((matrix, trace)) => {
                if validate(matrix.matrix(), lrc.code())?.verdict {
                    return Ok(Construction { step_a, config, matrix, trace });
                }
            }
            Err(Error::SwapExhausted { iteration }) => deepest = deepest.max(Some(iteration)),
            Err(e) => return Err(e),
        }
    }
    Err(match deepest {
        Some(iteration) => Error::SwapExhausted { iteration },
        None => Error::NoValidSeeds { tried },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub target_weight: usize,
    pub row_weights: Vec<usize>,
    pub col_weights: Vec<usize>,
    pub row_correctable: Vec<bool>,
    pub verdict: bool,
}

/// Checks that `e` is (n-k)-regular and each row is a correctable pattern.
pub fn validate(e: &BinaryMatrix, code: &LinearCode) -> Result<ValidationReport> {
    let n = code.n();
    if e.rows() != n || e.cols() != n {
        return Err(Error::DimensionMismatch(format!("E is {}x{}, code length is {n}", e.rows(), e.cols())));
    }
    let target = code.redundancy();
    let row_weights = e.row_weights();
    let col_weights = e.col_weights();
    let row_correctable: Vec<bool> = (0..n)
        .map(|r| {
            let erased: Vec<usize> = (0..n).filter(|&c| e.get(r, c)).collect();
            code.is_correctable_0(&erased)
        })
        .collect();
    let verdict = row_weights.iter().chain(&col_weights).all(|&w| w == target) && row_correctable.iter().all(|&b| b);
    Ok(ValidationReport { target_weight: target, row_weights, col_weights, row_correctable, verdict })
}

/// Backtracking search for any valid `E`.
///
/// Rows are correctable weight-(n-k) patterns, listed in lexicographic order
/// of their supports. Each step fills the lowest-index column still short of
/// n-k with a pattern containing it, taking patterns in nondecreasing order
/// within one column. Sorted by index, the rows of the first witness found
/// form the lexicographically least valid sequence. `Ok(None)` means the
/// space was exhausted without a witness.
pub fn brute_force_search(code: &LinearCode, budget: u64) -> Result<Option<BinaryMatrix>> {
    let n = code.n();
    let w = code.redundancy();
    let candidates: Vec<Vec<usize>> = (0..n).combinations(w).filter(|s| code.is_correctable_0(s)).collect();
    let mut containing = vec![Vec::new(); n];
    for (i, s) in candidates.iter().enumerate() {
        for &c in s {
            containing[c].push(i);
        }
    }
    struct Search<'a> {
        candidates: &'a [Vec<usize>],
        containing: &'a [Vec<usize>],
        n: usize,
        w: usize,
        budget: u64,
        nodes: u64,
        // (column counts, first admissible candidate) known to lead nowhere
        dead: HashSet<(Vec<usize>, usize)>,
    }
    impl Search<'_> {
        fn go(&mut self, chosen: &mut Vec<usize>, counts: &mut [usize], floor: (usize, usize)) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let remaining = self.n - chosen.len();
            let Some(target) = (0..self.n).find(|&c| counts[c] < self.w) else {
                return Ok(remaining == 0);
            };
            if counts.iter().any(|&c| self.w - c > remaining) {
                return Ok(false);
            }
            let start = if floor.0 == target { floor.1 } else { 0 };
            let key = (counts.to_vec(), start);
            if self.dead.contains(&key) {
                return Ok(false);
            }
            for &idx in self.containing[target].iter().skip_while(|&&i| i < start) {
                let cand = &self.candidates[idx];
                if cand.iter().any(|&c| counts[c] == self.w) {
                    continue;
                }
                for &c in cand {
                    counts[c] += 1;
                }
                chosen.push(idx);
                if self.go(chosen, counts, (target, idx))? {
                    return Ok(true);
                }
                chosen.pop();
                for &c in cand {
                    counts[c] -= 1;
                }
            }
            self.dead.insert(key);
            Ok(false)
        }
    }
    let mut search = Search {
        candidates: &candidates,
        containing: &containing,
        n,
        w,
        budget,
        nodes: 0,
        dead: HashSet::new(),
    };
    let mut chosen = Vec::with_capacity(n);
    let mut counts = vec![0; n];
    if !search.go(&mut chosen, &mut counts, (usize::MAX, 0))? {
        return Ok(None);
    }
    let mut e = BinaryMatrix::zeros(n, n);
    for (r, &idx) in chosen.iter().enumerate() {
        for &c in &candidates[idx] {
            e.set(r, c, true);
        }
    }
    Ok(Some(e))
}

/// Counting condition under which the Step b swaps stay valid:
/// `Σ_{j ≤ L_c} ν_j + (L - L_c)(m - (δ-1)) ≥ r̄` with `ν_j = ρ_j - (δ-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapFeasibility {
    pub lhs: i64,
    pub rhs: usize,
    pub holds: bool,
}

pub fn swap_feasibility(profile: &LocalityProfile, config: &StepAConfig) -> SwapFeasibility {
    let d1 = profile.delta as i64 - 1;
    let lc = profile.local_codes;
    let local: i64 = config.rho[..lc].iter().map(|&r| r as i64 - d1).sum();
    let global = (profile.partitions - lc) as i64 * (config.base_weight as i64 - d1);
    let lhs = local + global;
    SwapFeasibility { lhs, rhs: profile.remainder, holds: lhs >= profile.remainder as i64 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{binary_field, Field};
    use crate::lrc::{build_from_mds_parent, parity_splitting, profile};
    use crate::matrix::MatrixGF;

    fn gf8() -> Field {
        binary_field(3).unwrap()
    }

    fn pyramid() -> LrcCode {
        let f = gf8();
        let h = MatrixGF::from_strs(&f, &[&["z^3", "1", "z^3", "z", "1", "0"], &["z^4", "1", "z^5", "z^5", "0", "1"]]).unwrap();
        build_from_mds_parent(&LinearCode::from_parity_check(h).unwrap(), 2, 2).unwrap()
    }

    fn bits(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_text(&rows.join("\n")).unwrap()
    }

    #[test]
    fn circulant_is_regular() {
        for order in 1..8 {
            for w in 0..=order {
                assert!(circulant(order, w).unwrap().is_regular(w));
            }
        }
        assert_eq!(circulant(3, 1).unwrap(), BinaryMatrix::identity(3));
        assert_eq!(circulant(3, 4).unwrap_err(), Error::InfeasibleRho { rho: 4, order: 3 });
    }

    #[test]
    fn circulant_supports() {
        assert_eq!(circulant_with_support(4, &[0, 1]), circulant(4, 2).unwrap());
        assert_eq!(circulant_with_support(3, &[0, 2]), bits(&["101", "110", "011"]));
        assert!(circulant_with_support(5, &[1, 3]).is_regular(2));
    }

    #[test]
    fn seed_candidates_start_with_default() {
        let lrc = pyramid();
        let seeds = seed_candidates(lrc.profile()).unwrap();
        // rho = (2, 1) over order 3: three supports for each seed
        assert_eq!(seeds.len(), 9);
        assert_eq!(seeds[0], step_a_init(lrc.profile()).unwrap().1.seeds);
        assert!(seeds.iter().all(|s| s[0].is_regular(2) && s[1].is_regular(1)));
    }

    #[test]
    fn step_a_pyramid() {
        let lrc = pyramid();
        let (e, cfg) = step_a_init(lrc.profile()).unwrap();
        assert_eq!(cfg.rho, vec![2, 1]);
        assert_eq!(e.e_tilde(), bits(&["110100", "011010", "101001", "100110", "010011", "001101"]));
        assert_eq!(e.w(), bits(&["001001"]));
        assert_eq!(e.o(), bits(&["1"]));
        assert_eq!(e.z(), BinaryMatrix::zeros(6, 1));
        assert!(e.matrix().row_weights().iter().all(|&w| w == 3));
        assert_eq!(e.matrix().col_weights(), vec![3, 3, 4, 3, 3, 4, 1]);
    }

    #[test]
    fn step_b_pyramid_default_policy() {
        let lrc = pyramid();
        let (a, _) = step_a_init(lrc.profile()).unwrap();
        let (e, trace) = step_b_swaps(&a, &lrc).unwrap();
        assert_eq!(trace.iterations.len(), 1);
        let it = &trace.iterations[0];
        assert_eq!(it.partitions[0].shift, vec![1, 0]);
        assert_eq!(it.partitions[1].shift, vec![0, 1]);
        assert_eq!(it.partitions[0].swaps, vec![Swap { row: 2, from_col: 3, to_col: 7 }]);
        // rows 5 and 6 both qualify; the policy takes the lower index
        assert_eq!(it.partitions[1].swaps, vec![Swap { row: 5, from_col: 6, to_col: 7 }]);
        assert!(validate(e.matrix(), lrc.code()).unwrap().verdict);
    }

    #[test]
    fn step_b_replays_reference_plan() {
        let lrc = pyramid();
        let (a, _) = step_a_init(lrc.profile()).unwrap();
        let plan = [IterationPlan { column_partition: 1, assignments: vec![vec![(2, 3)], vec![(6, 6)]] }];
        let (e, trace) = apply_swap_plan(&a, &lrc, &plan).unwrap();
        assert_eq!(e.matrix(), &bits(&["1101000", "0100101", "1010010", "1001100", "0100110", "0011001", "0010011"]));
        assert_eq!(trace.swap_count(), 2);
        let bad = [IterationPlan { column_partition: 1, assignments: vec![vec![(1, 3)], vec![(6, 6)]] }];
        assert!(apply_swap_plan(&a, &lrc, &bad).is_err());
    }

    #[test]
    fn no_remainder_skips_step_b() {
        let f = binary_field(4).unwrap();
        let lrc = parity_splitting(&f, 5, 4, 2, 2).unwrap();
        assert_eq!(lrc.profile().remainder, 0);
        let built = construct(&lrc).unwrap();
        assert!(built.trace.iterations.is_empty());
        assert_eq!(built.matrix, built.step_a);
        assert!(built.matrix.matrix().is_regular(2));
    }

    #[test]
    fn construct_nine_four() {
        let f = binary_field(4).unwrap();
        let lrc = parity_splitting(&f, 8, 4, 2, 2).unwrap();
        let p = lrc.profile();
        assert_eq!((p.n, p.local_length, p.partitions, p.remainder), (9, 3, 3, 0));
        let built = construct(&lrc).unwrap();
        assert!(validate(built.matrix.matrix(), lrc.code()).unwrap().verdict);
        assert!(built.matrix.matrix().is_regular(5));
    }

    #[test]
    fn validate_examples() {
        let lrc = pyramid();
        let reference = bits(&["1101000", "0100101", "1010010", "1001100", "0100110", "0011001", "0010011"]);
        assert!(validate(&reference, lrc.code()).unwrap().verdict);
        let id = validate(&BinaryMatrix::identity(7), lrc.code()).unwrap();
        assert!(!id.verdict);
        assert!(id.row_correctable.iter().all(|&b| b));
        let mut broken = reference.clone();
        for c in 0..7 {
            broken.set(0, c, c < 3);
        }
        let rep = validate(&broken, lrc.code()).unwrap();
        // {1,2,3} is the whole first local group: 3 erasures there need all
        // 3 parity rows, but row 2 of H vanishes on those columns.
        assert!(!rep.row_correctable[0]);
        assert!(!rep.verdict);
        assert!(validate(&BinaryMatrix::zeros(6, 6), lrc.code()).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let lrc = pyramid();
        let e = brute_force_search(lrc.code(), DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        assert!(validate(&e, lrc.code()).unwrap().verdict);

        let f2 = binary_field(1).unwrap();
        let rep = LinearCode::from_parity_check(MatrixGF::from_rows(&f2, 2, &[vec![1, 1]]).unwrap()).unwrap();
        assert_eq!(brute_force_search(&rep, 100).unwrap(), Some(BinaryMatrix::identity(2)));

        let h = MatrixGF::from_rows(&f2, 4, &[vec![1, 1, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let starved = LinearCode::from_parity_check(h).unwrap();
        assert_eq!(brute_force_search(&starved, 10_000).unwrap(), None);

        assert_eq!(brute_force_search(lrc.code(), 2).unwrap_err(), Error::BudgetExceeded(2));
    }

    #[test]
    fn infeasible_rho_when_remainder_exceeds_k() {
        let p = profile(5, 1, 1, 3).unwrap();
        assert_eq!((p.partitions, p.remainder), (1, 2));
        assert_eq!(step_a_init(&p).unwrap_err(), Error::InfeasibleRho { rho: 4, order: 3 });
    }

    #[test]
    fn feasibility_pyramid() {
        let lrc = pyramid();
        let (_, cfg) = step_a_init(lrc.profile()).unwrap();
        let f = swap_feasibility(lrc.profile(), &cfg);
        assert_eq!((f.lhs, f.rhs, f.holds), (1, 1, true));
    }
}
