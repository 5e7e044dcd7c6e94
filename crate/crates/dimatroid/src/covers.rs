//! Density and cover invariants: ζ, β, β*, the truncated-density identity,
//! and minimal fractional covers of truncated dimatroids.
//!
//! ζ is the exact maximum of `|S| / rank(S)`; β(M) = ⌈ζ(M)⌉ with a witness
//! cover; β of a dimatroid is computed exactly by branch and bound over
//! maximal common independent sets; β* of a dimatroid has the closed form
//! `max(ζP, ζQ)`, cross-checked elsewhere against the covering LP.
//!
//! Loops make every cover infinite, so all operations here insist on
//! loopless inputs.

use serde::Serialize;
use std::collections::HashSet;

use crate::intersect::{subsets_of_size, Dimatroid};
use crate::lp::{solve_covering, CoveringLP, LPSolution};
use crate::matroid::{rank_table, Matroid, EXHAUSTIVE_CAP};
use crate::rat::{self, Rational};
use crate::set::{full_mask, ElementSet};
use crate::{Error, Result};

/// Hard cap for the exact dimatroid cover number.
pub const BETA_EXACT_CAP: usize = 18;
/// Hard cap for fractional covers of truncations (column enumeration).
pub const FRAC_COVER_CAP: usize = 18;

/// An integral cover certificate: `witness` has exactly `value` edges whose
/// union is the ground set.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub value: usize,
    pub witness: Vec<ElementSet>,
    pub method: String,
}

/// A fractional cover: nonnegative weights on edges, every vertex covered
/// with total weight at least one.
#[derive(Clone, Debug, Serialize)]
pub struct FractionalCover {
    pub entries: Vec<CoverEntry>,
    #[serde(with = "crate::rat::pq")]
    pub total: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverEntry {
    pub edge: ElementSet,
    #[serde(with = "crate::rat::pq")]
    pub weight: Rational,
}

impl FractionalCover {
    /// Exact feasibility check: coverage of every vertex is at least one and
    /// the recorded total matches the entry sum.
    pub fn verify(&self, n: usize) -> Result<()> {
        use num::{One, Zero};
        let fail = |detail: String| Error::InvariantViolation {
            claim: "fractional cover feasibility",
            detail,
        };
        let mut sum = Rational::zero();
        for e in &self.entries {
            if !rat::is_nonnegative(&e.weight) {
                return Err(fail(format!("negative weight on {}", e.edge)));
            }
            sum += &e.weight;
        }
        if sum != self.total {
            return Err(fail("total does not match the entry sum".into()));
        }
        for v in 0..n {
            let mut cover = Rational::zero();
            for e in &self.entries {
                if e.edge.contains(v) {
                    cover += &e.weight;
                }
            }
            if cover < Rational::one() {
                return Err(fail(format!("vertex {v} covered with weight {}", rat::display(&cover))));
            }
        }
        Ok(())
    }
}

fn check_exhaustive(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyGroundSet)
    } else if n > cap {
        Err(Error::TooLarge { n, cap })
    } else {
        Ok(())
    }
}

/// Density ζ(M) = max over nonempty `S` of `|S| / rank(S)`, exhaustively and
/// exactly. Requires a loopless matroid with `1 ≤ n ≤ 22`.
pub fn zeta(m: &Matroid) -> Result<Rational> {
    check_exhaustive(m.ground_size(), EXHAUSTIVE_CAP)?;
    m.require_loopless()?;
    let ranks = rank_table(m);
    Ok(zeta_from_ranks(&ranks))
}

fn zeta_from_ranks(ranks: &[u8]) -> Rational {
    // rank(S) >= 1 for nonempty S once loops are excluded.
    let mut best_num = 1u64;
    let mut best_den = 1u64;
    for (mask, &r) in ranks.iter().enumerate().skip(1) {
        let size = mask.count_ones() as u64;
        let r = r as u64;
        if (size as u128) * (best_den as u128) > (best_num as u128) * (r as u128) {
            best_num = size;
            best_den = r;
        }
    }
    rat::ratio(best_num as i64, best_den as i64)
}

/// Edge-cover number of a loopless matroid: ⌈ζ⌉, witnessed by an actual
/// cover with that many independent sets (greedy first, exact search if the
/// greedy cover is too long).
pub fn beta_matroid(m: &Matroid) -> Result<CoverReport> {
    let n = m.ground_size();
    let z = zeta(m)?;
    let value = rat::ceil_to_i64(&z) as usize;

    let mut witness = Vec::new();
    let mut uncovered = full_mask(n);
    let mut method = "greedy";
    while uncovered != 0 {
        let mut acc = 0u64;
        let mut rest = uncovered;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            if m.indep(acc | 1 << e) {
                acc |= 1 << e;
            }
        }
        witness.push(ElementSet::from_bits(n, acc));
        uncovered &= !acc;
    }
    if witness.len() > value {
        method = "exact-search";
        witness = cover_search(n, value, &|bits| m.indep(bits)).ok_or_else(|| {
            Error::InvariantViolation {
                claim: "Edmonds' cover theorem",
                detail: format!("no cover of {} by {value} independent sets", m.describe()),
            }
        })?;
    }
    let covered = witness.iter().fold(0u64, |acc, s| acc | s.bits());
    if covered != full_mask(n) || witness.len() != value {
        return Err(Error::InvariantViolation {
            claim: "Edmonds' cover theorem",
            detail: format!("witness does not certify value {value} on {}", m.describe()),
        });
    }
    Ok(CoverReport { value, witness, method: method.into() })
}

/// Backtracking search for a cover of the ground set by `k` sets that are
/// each accepted by `indep`. Elements are assigned in ascending order; the
/// first empty class breaks the class-permutation symmetry.
fn cover_search(n: usize, k: usize, indep: &dyn Fn(u64) -> bool) -> Option<Vec<ElementSet>> {
    fn rec(e: usize, n: usize, classes: &mut Vec<u64>, indep: &dyn Fn(u64) -> bool) -> bool {
        if e == n {
            return true;
        }
        let mut seen_empty = false;
        for i in 0..classes.len() {
            if classes[i] == 0 {
                if seen_empty {
                    break;
                }
                seen_empty = true;
            }
            let cand = classes[i] | 1 << e;
            if indep(cand) {
                classes[i] = cand;
                if rec(e + 1, n, classes, indep) {
                    return true;
                }
                classes[i] &= !(1 << e);
            }
        }
        false
    }
    if k == 0 {
        return if n == 0 { Some(vec![]) } else { None };
    }
    let mut classes = vec![0u64; k];
    rec(0, n, &mut classes, indep)
        .then(|| classes.into_iter().map(|c| ElementSet::from_bits(n, c)).collect())
}

/// Exact minimum number of common independent sets covering the ground set,
/// by branch and bound over maximal common independent sets. The lower bound
/// is ⌈max(ζP, ζQ)⌉ = ⌈β*⌉.
pub fn beta_exact(d: &Dimatroid) -> Result<CoverReport> {
    let n = d.ground_size();
    check_exhaustive(n, BETA_EXACT_CAP)?;
    d.require_loopless()?;

    let lower = rat::ceil_to_i64(&beta_star(d)?) as usize;

    let ranks_p = rank_table(d.p());
    let ranks_q = rank_table(d.q());
    let size = 1usize << n;
    let common: Vec<bool> = (0..size)
        .map(|mask| {
            let c = mask.count_ones() as u8;
            ranks_p[mask] == c && ranks_q[mask] == c
        })
        .collect();

    // Maximal common independent sets; a minimum cover may use them alone.
    let mut maximal: Vec<u64> = Vec::new();
    for mask in 0..size {
        if !common[mask] {
            continue;
        }
        let outside = full_mask(n) & !(mask as u64);
        let mut rest = outside;
        let mut is_max = true;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            if common[mask | (1usize << e)] {
                is_max = false;
                break;
            }
        }
        if is_max {
            maximal.push(mask as u64);
        }
    }

    // Greedy upper bound: repeatedly take the maximal set covering most of
    // what is left.
    let mut greedy: Vec<u64> = Vec::new();
    let mut uncovered = full_mask(n);
    while uncovered != 0 {
        let best = maximal
            .iter()
            .copied()
            .max_by_key(|s| (s & uncovered).count_ones())
            .expect("loopless dimatroid has nonempty maximal sets");
        greedy.push(best);
        uncovered &= !best;
    }

    for k in lower..greedy.len() {
        if let Some(cover) = exact_cover(n, k, &maximal) {
            return Ok(report_cover(n, cover, "branch-and-bound"));
        }
    }
    Ok(report_cover(n, greedy, "greedy"))
}

fn report_cover(n: usize, cover: Vec<u64>, method: &str) -> CoverReport {
    debug_assert!(cover.iter().fold(0u64, |a, s| a | s) == full_mask(n));
    CoverReport {
        value: cover.len(),
        witness: cover.into_iter().map(|c| ElementSet::from_bits(n, c)).collect(),
        method: method.into(),
    }
}

/// Can `k` of the candidate sets cover everything? Branches on the lowest
/// uncovered element; memoizes failed (uncovered, k) states.
fn exact_cover(n: usize, k: usize, candidates: &[u64]) -> Option<Vec<u64>> {
    fn rec(
        uncovered: u64,
        k: usize,
        candidates: &[u64],
        chosen: &mut Vec<u64>,
        failed: &mut HashSet<(u64, usize)>,
    ) -> bool {
        if uncovered == 0 {
            return true;
        }
        if k == 0 || failed.contains(&(uncovered, k)) {
            return false;
        }
        let v = uncovered.trailing_zeros();
        for &c in candidates.iter().filter(|&&c| c & 1 << v != 0) {
            chosen.push(c);
            if rec(uncovered & !c, k - 1, candidates, chosen, failed) {
                return true;
            }
            chosen.pop();
        }
        failed.insert((uncovered, k));
        false
    }
    let mut chosen = Vec::with_capacity(k);
    let mut failed = HashSet::new();
    rec(full_mask(n), k, candidates, &mut chosen, &mut failed).then_some(chosen)
}

/// Fractional cover number of a dimatroid: the closed form `max(ζP, ζQ)`.
pub fn beta_star(d: &Dimatroid) -> Result<Rational> {
    let zp = zeta(d.p())?;
    let zq = zeta(d.q())?;
    Ok(zp.max(zq))
}

/// Density of the truncation to rank `g`, by the closed form `n / g`.
/// Valid for `1 ≤ g ≤ ⌊n / ζ(M)⌋`.
pub fn zeta_truncated(m: &Matroid, g: usize) -> Result<Rational> {
    let n = m.ground_size();
    let z = zeta(m)?;
    let g_max = rat::floor_to_i64(&(rat::from_usize(n) / &z));
    if g == 0 || (g as i64) > g_max {
        return Err(Error::Precondition(format!(
            "truncation level must satisfy 1 <= g <= {g_max}, got {g}"
        )));
    }
    Ok(rat::ratio(n as i64, g as i64))
}

/// An optimal fractional cover of the dimatroid truncated at `g`, solved
/// exactly over the size-`g` common independent sets as LP columns. The
/// total is forced to `n/g` and the support consists of size-`g` edges;
/// anything else is a fatal invariant violation.
pub fn minimal_fractional_cover(d: &Dimatroid, g: usize) -> Result<FractionalCover> {
    let n = d.ground_size();
    check_exhaustive(n, FRAC_COVER_CAP)?;
    d.require_loopless()?;
    let z = beta_star(d)?;
    let g_max = rat::floor_to_i64(&(rat::from_usize(n) / &z));
    if g == 0 || (g as i64) > g_max {
        return Err(Error::Precondition(format!(
            "truncation level must satisfy 1 <= g <= {g_max}, got {g}"
        )));
    }

    let columns: Vec<u64> = subsets_of_size(n, g).filter(|&mask| d.common(mask)).collect();
    let lp = CoveringLP::new(n, columns.clone())?;
    let violation = |detail: String| Error::InvariantViolation {
        claim: "the dimatroid fractional-cover identity",
        detail,
    };
    let (values, total) = match solve_covering(&lp)? {
        LPSolution::Optimal { values, objective } => (values, objective),
        LPSolution::Infeasible => {
            return Err(violation(format!(
                "no fractional cover by size-{g} common independent sets"
            )))
        }
    };
    let expected = rat::ratio(n as i64, g as i64);
    if total != expected {
        return Err(violation(format!(
            "optimal total is {}, expected {}",
            rat::display(&total),
            rat::display(&expected)
        )));
    }

    let mut entries: Vec<CoverEntry> = columns
        .into_iter()
        .zip(values)
        .filter(|(_, w)| !num::Zero::is_zero(w))
        .map(|(mask, weight)| CoverEntry { edge: ElementSet::from_bits(n, mask), weight })
        .collect();
    entries.sort_by_key(|e| e.edge);
    for e in &entries {
        if e.edge.len() != g {
            return Err(violation(format!("support edge {} is not of size {g}", e.edge)));
        }
    }
    let cover = FractionalCover { entries, total };
    cover.verify(n)?;
    Ok(cover)
}

/// Exact optimum of the full covering LP of a dimatroid, with one column per
/// maximal common independent set. Maximal edges dominate: shifting any
/// cover's weight onto maximal supersets keeps it feasible at equal total.
pub fn full_cover_lp_optimum(d: &Dimatroid) -> Result<Rational> {
    let n = d.ground_size();
    check_exhaustive(n, FRAC_COVER_CAP.min(16))?;
    d.require_loopless()?;
    let size = 1usize << n;
    let common: Vec<bool> = (0..size).map(|mask| d.common(mask as u64)).collect();
    let mut columns = Vec::new();
    for mask in 1..size {
        if !common[mask] {
            continue;
        }
        let outside = full_mask(n) & !(mask as u64);
        let mut rest = outside;
        let mut is_max = true;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            if common[mask | (1usize << e)] {
                is_max = false;
                break;
            }
        }
        if is_max {
            columns.push(mask as u64);
        }
    }
    match solve_covering(&CoveringLP::new(n, columns)?)? {
        LPSolution::Optimal { objective, .. } => Ok(objective),
        LPSolution::Infeasible => Err(Error::InvariantViolation {
            claim: "fractional cover feasibility",
            detail: "loopless dimatroid admits no fractional cover".into(),
        }),
    }
}

/// ζ of an arbitrary downward-closed family given by an oracle, by the same
/// exhaustive sweep used for matroids but with brute-force ranks. Test-side
/// oracle for the truncated-density identity.
pub fn zeta_brute_force(n: usize, is_edge: &dyn Fn(u64) -> bool) -> Result<Rational> {
    check_exhaustive(n, 16)?;
    let size = 1usize << n;
    let mut max_edge_inside = vec![0u8; size];
    for mask in 0..size {
        let mut best = if is_edge(mask as u64) { mask.count_ones() as u8 } else { 0 };
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.max(max_edge_inside[mask & !(1usize << e)]);
        }
        max_edge_inside[mask] = best;
    }
    for e in 0..n {
        if max_edge_inside[1 << e] == 0 {
            return Err(Error::Loops(ElementSet::singleton(n, e)));
        }
    }
    Ok(zeta_from_ranks(&max_edge_inside))
}
