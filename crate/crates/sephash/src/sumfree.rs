//! Homogeneous equation systems and integer sets avoiding their non-constant solutions.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::Error;
use crate::violation::Violation;

/// A list of homogeneous linear equations, each given by its coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    equations: Vec<Vec<i64>>,
}

impl EquationSystem {
    /// Builds a system; every equation must sum to zero and have a nonzero coefficient.
    pub fn new(equations: Vec<Vec<i64>>) -> Result<Self, Error> {
        for (index, eq) in equations.iter().enumerate() {
            let sum: i64 = eq.iter().sum();
            if sum != 0 {
                return Err(Error::NotHomogeneous { index, sum });
            }
            if eq.iter().all(|&c| c == 0) {
                return Err(Error::ZeroEquation { index });
            }
        }
        Ok(EquationSystem { equations })
    }

    /// The coefficient vectors.
    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }
}

/// The single equation m1 + m2 - 2*m3 = 0.
pub fn two_sum_free_system() -> EquationSystem {
    EquationSystem::new(vec![vec![1, 1, -2]]).expect("fixed system is valid")
}

/// All equations c1*m1 + c2*m2 - (c1+c2)*m3 = 0 with c1, c2 >= 1 and c1 + c2 <= r.
pub fn r_sum_free_system(r: u64) -> Result<EquationSystem, Error> {
    if r < 2 {
        return Err(Error::SumFreeOrder { r });
    }
    let mut equations = Vec::new();
    for c1 in 1..r {
        for c2 in 1..=r - c1 {
            equations.push(vec![c1 as i64, c2 as i64, -((c1 + c2) as i64)]);
        }
    }
    EquationSystem::new(equations)
}

/// Largest minus smallest element of a base set.
pub fn r_set_rank(r_set: &[u64]) -> u64 {
    match (r_set.iter().min(), r_set.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    }
}

fn canonical_coeffs(eq: &[i64]) -> Vec<i64> {
    let mut a: Vec<i64> = eq.to_vec();
    a.sort_unstable();
    let mut b: Vec<i64> = eq.iter().map(|&c| -c).collect();
    b.sort_unstable();
    a.min(b)
}

/// Telescoping difference equations over all cyclic orderings of subsets of the base set.
///
/// For each subset of size 3 to |R| and each cyclic ordering (fixed start, reversal
/// removed), the equation sums (next - current) * m over the cycle. Equations that
/// repeat an earlier coefficient multiset, up to sign, are dropped.
pub fn r_set_sum_free_system(r_set: &[u64]) -> Result<EquationSystem, Error> {
    if r_set.len() < 3 {
        return Err(Error::RSetTooSmall { len: r_set.len() });
    }
    let mut base = r_set.to_vec();
    base.sort_unstable();
    for pair in base.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateValue { value: pair[0] });
        }
    }
    let mut equations = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for k in 3..=base.len() {
        for subset in base.iter().copied().combinations(k) {
            for rest in subset[1..].iter().copied().permutations(k - 1) {
                if rest[0] > rest[k - 2] {
                    continue;
                }
                let mut cycle = Vec::with_capacity(k);
                cycle.push(subset[0]);
                cycle.extend(&rest);
                let coeffs: Vec<i64> = (0..k)
                    .map(|i| cycle[(i + 1) % k] as i64 - cycle[i] as i64)
                    .collect();
                if seen.insert(canonical_coeffs(&coeffs)) {
                    equations.push(coeffs);
                }
            }
        }
    }
    EquationSystem::new(equations)
}

/// The seven-equation system whose avoiding sets drive the four-part construction.
pub fn phf4_system(mu: u32) -> EquationSystem {
    let m = i64::from(mu);
    EquationSystem::new(vec![
        vec![2, 3, m, -(m + 5)],
        vec![5, m + 3, -3, -(m + 5)],
        vec![5, m, -2, -(m + 3)],
        vec![2, 3, -5],
        vec![5, m, -(m + 5)],
        vec![2, m + 3, -(m + 5)],
        vec![3, m, -(m + 3)],
    ])
    .expect("fixed system is valid")
}

fn eval_partial(coeffs: &[i64], values: &[u64]) -> i128 {
    coeffs
        .iter()
        .zip(values)
        .map(|(&c, &v)| i128::from(c) * i128::from(v))
        .sum()
}

fn non_constant(values: &[u64]) -> bool {
    values.iter().any(|&v| v != values[0])
}

// Advances an odometer over index tuples; the last position moves fastest.
fn advance(indices: &mut [usize], radix: usize) -> bool {
    for i in (0..indices.len()).rev() {
        indices[i] += 1;
        if indices[i] < radix {
            return true;
        }
        indices[i] = 0;
    }
    false
}

// First non-constant solution of one equation over the sorted value list, in
// lexicographic tuple order. When the last coefficient is nonzero the last
// value is solved instead of enumerated, which preserves the order.
fn equation_violation(eq: &[i64], sorted: &[u64], members: &HashSet<u64>) -> Option<Vec<u64>> {
    let k = eq.len();
    if sorted.is_empty() || k == 0 {
        return None;
    }
    if eq[k - 1] != 0 {
        let mut idx = vec![0usize; k - 1];
        loop {
            let prefix: Vec<u64> = idx.iter().map(|&i| sorted[i]).collect();
            let partial = eval_partial(&eq[..k - 1], &prefix);
            let c = i128::from(eq[k - 1]);
            if (-partial) % c == 0 {
                let x = (-partial) / c;
                if (0..=i128::from(u64::MAX)).contains(&x) && members.contains(&(x as u64)) {
                    let mut tuple = prefix;
                    tuple.push(x as u64);
                    if non_constant(&tuple) {
                        return Some(tuple);
                    }
                }
            }
            if !advance(&mut idx, sorted.len()) {
                break;
            }
        }
    } else {
        let mut idx = vec![0usize; k];
        loop {
            let tuple: Vec<u64> = idx.iter().map(|&i| sorted[i]).collect();
            if non_constant(&tuple) && eval_partial(eq, &tuple) == 0 {
                return Some(tuple);
            }
            if !advance(&mut idx, sorted.len()) {
                break;
            }
        }
    }
    None
}

/// Finds the first non-constant solution of any equation over the set, or None.
///
/// Equations are tried in system order; within an equation, assignments are
/// scanned in lexicographic order of the value tuple. Constant assignments
/// satisfy any homogeneous equation and do not count.
pub fn is_solution_free(elements: &[u64], system: &EquationSystem) -> Option<Violation> {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let members: HashSet<u64> = sorted.iter().copied().collect();
    for eq in system.equations() {
        if let Some(values) = equation_violation(eq, &sorted, &members) {
            return Some(Violation::EquationSolution {
                coefficients: eq.clone(),
                values,
            });
        }
    }
    None
}

// Whether `cand` can join a solution-free set without creating a solution.
// Every potential solution must use `cand` somewhere, so one position is pinned
// to it, one nonzero position is solved for, and the rest are enumerated.
fn addable(cand: u64, current: &[u64], system: &EquationSystem) -> bool {
    let mut all = current.to_vec();
    let insert_at = all.partition_point(|&v| v < cand);
    all.insert(insert_at, cand);
    let members: HashSet<u64> = all.iter().copied().collect();
    for eq in system.equations() {
        let k = eq.len();
        for p in 0..k {
            if eq[p] == 0 {
                if zero_coeff_solution(eq, p, cand, &all) {
                    return false;
                }
                continue;
            }
            let pivot = (0..k)
                .rev()
                .find(|&j| j != p && eq[j] != 0)
                .expect("homogeneous equations have two nonzero coefficients");
            let free: Vec<usize> = (0..k).filter(|&j| j != p && j != pivot).collect();
            let mut idx = vec![0usize; free.len()];
            loop {
                let mut tuple = vec![0u64; k];
                tuple[p] = cand;
                for (&slot, &i) in free.iter().zip(&idx) {
                    tuple[slot] = all[i];
                }
                let partial: i128 = (0..k)
                    .filter(|&j| j != pivot)
                    .map(|j| i128::from(eq[j]) * i128::from(tuple[j]))
                    .sum();
                let c = i128::from(eq[pivot]);
                if (-partial) % c == 0 {
                    let x = (-partial) / c;
                    if (0..=i128::from(u64::MAX)).contains(&x) && members.contains(&(x as u64)) {
                        tuple[pivot] = x as u64;
                        if non_constant(&tuple) {
                            return false;
                        }
                    }
                }
                if free.is_empty() || !advance(&mut idx, all.len()) {
                    break;
                }
            }
        }
    }
    true
}

// Solutions that place `cand` where its coefficient vanishes: the equation must
// then hold over the other positions, with `cand` still counting for distinctness.
fn zero_coeff_solution(eq: &[i64], p: usize, cand: u64, all: &[u64]) -> bool {
    let others: Vec<usize> = (0..eq.len()).filter(|&j| j != p).collect();
    let mut idx = vec![0usize; others.len()];
    loop {
        let mut tuple = vec![0u64; eq.len()];
        tuple[p] = cand;
        for (&slot, &i) in others.iter().zip(&idx) {
            tuple[slot] = all[i];
        }
        if non_constant(&tuple) && eval_partial(eq, &tuple) == 0 {
            return true;
        }
        if !advance(&mut idx, all.len()) {
            break;
        }
    }
    false
}

/// A set in 0..=limit with no non-constant solution of the attached system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidingSet {
    pub elements: Vec<u64>,
    pub limit: u64,
    pub system: EquationSystem,
}

impl AvoidingSet {
    /// Re-checks the defining property from scratch.
    pub fn is_valid(&self) -> bool {
        self.elements.iter().all(|&v| v <= self.limit)
            && is_solution_free(&self.elements, &self.system).is_none()
    }
}

/// Scans 0..=limit in order, keeping every element that preserves solution-freeness.
pub fn greedy_avoiding_set(limit: u64, system: &EquationSystem) -> AvoidingSet {
    let mut elements: Vec<u64> = Vec::new();
    for cand in 0..=limit {
        if addable(cand, &elements, system) {
            elements.push(cand);
        }
    }
    AvoidingSet {
        elements,
        limit,
        system: system.clone(),
    }
}

const MAX_SEARCH_LIMIT: u64 = 40;

/// Exhaustive branch-and-bound for a largest solution-free subset of 0..=limit.
///
/// The first maximum the search meets is returned, which makes it the one whose
/// sorted element list is lexicographically least.
pub fn max_avoiding_set(limit: u64, system: &EquationSystem) -> Result<AvoidingSet, Error> {
    if limit > MAX_SEARCH_LIMIT {
        return Err(Error::SearchGuard {
            limit,
            max: MAX_SEARCH_LIMIT,
        });
    }
    fn dfs(
        cand: u64,
        limit: u64,
        system: &EquationSystem,
        current: &mut Vec<u64>,
        best: &mut Vec<u64>,
    ) {
        if cand > limit {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        if current.len() + (limit - cand + 1) as usize <= best.len() {
            return;
        }
        if addable(cand, current, system) {
            current.push(cand);
            dfs(cand + 1, limit, system, current, best);
            current.pop();
        }
        dfs(cand + 1, limit, system, current, best);
    }
    let mut best = Vec::new();
    dfs(0, limit, system, &mut Vec::new(), &mut best);
    Ok(AvoidingSet {
        elements: best,
        limit,
        system: system.clone(),
    })
}

const MAX_DIGIT_BOUND: usize = 64;

/// Digit-sphere construction of a large two-sum-free subset of 0..=limit.
///
/// For each digit bound d, numbers whose base (2d-1) digits stay below d are
/// bucketed by the sum of squared digits; sums within a bucket carry no digit
/// overflow, so each bucket is two-sum-free, and adjoining 0 keeps it so.
/// The best bucket over all d, with 0 adjoined, is returned.
pub fn behrend_set(limit: u64) -> AvoidingSet {
    let system = two_sum_free_system();
    let mut best: Vec<u64> = vec![0];
    for d in 2..=MAX_DIGIT_BOUND as u64 {
        let radix = 2 * d - 1;
        let mut buckets: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for value in 0..=limit {
            let mut rest = value;
            let mut norm = 0u64;
            let mut ok = true;
            while rest > 0 {
                let digit = rest % radix;
                if digit >= d {
                    ok = false;
                    break;
                }
                norm += digit * digit;
                rest /= radix;
            }
            if ok {
                buckets.entry(norm).or_default().push(value);
            }
        }
        for bucket in buckets.values() {
            let mut candidate = bucket.clone();
            if candidate.first() != Some(&0) {
                candidate.insert(0, 0);
            }
            if candidate.len() > best.len() {
                best = candidate;
            }
        }
        if radix > limit.max(1) {
            break; // larger radixes read every value as a single digit
        }
    }
    debug_assert!(is_solution_free(&best, &system).is_none());
    AvoidingSet {
        elements: best,
        limit,
        system,
    }
}
