//! Fair and almost-fair representation.
//!
//! A set `S` represents a block `A` α-fairly when `|S ∩ A| ≥ ⌊α|A|⌋`, and
//! almost α-fairly when `|S ∩ A| ≥ ⌊α|A|⌋ − 1`. A single loopless matroid
//! always has a (1/ζ)-fair representative for any partition
//! ([`fair_rep_matroid`]); a dimatroid has an almost δ-fair representative
//! for any 2-partition, δ = 1/ζ − 1/n ([`fair_rep_two_blocks`]).

use serde::Serialize;

use crate::covers::zeta;
use crate::intersect::{Dimatroid, ExchangeWalk};
use crate::matroid::Matroid;
use crate::rat::{self, Rational};
use crate::set::ElementSet;
use crate::{Error, Result};

/// A partition of the ground set into pairwise-disjoint blocks. Empty
/// blocks are legal; their fairness thresholds are vacuous.
#[derive(Clone, Debug, Serialize)]
pub struct Partition {
    universe: usize,
    blocks: Vec<ElementSet>,
}

impl Partition {
    pub fn new(universe: usize, blocks: Vec<ElementSet>) -> Result<Self> {
        let mut union = ElementSet::empty(universe);
        for b in &blocks {
            if b.universe() != universe {
                return Err(Error::UniverseMismatch { expected: universe, got: b.universe() });
            }
            if !union.is_disjoint_from(b) {
                return Err(Error::InvalidSpec(format!("blocks overlap at {}", union.intersection(b))));
            }
            union = union.union(b);
        }
        if union != ElementSet::full(universe) {
            return Err(Error::InvalidSpec(format!(
                "blocks cover {union}, not the whole ground set"
            )));
        }
        Ok(Partition { universe, blocks })
    }

    /// The 2-partition `(a, V ∖ a)`.
    pub fn two_blocks(a: &ElementSet) -> Self {
        Partition { universe: a.universe(), blocks: vec![*a, a.complement()] }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockVerdict {
    Fair,
    Almost,
    Fail,
}

/// Per-block accounting for one candidate set against one α.
#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub block: ElementSet,
    pub size: usize,
    /// ⌊α · size⌋
    pub required_fair: i64,
    /// ⌊α · size⌋ − 1
    pub required_almost: i64,
    pub achieved: usize,
    pub verdict: BlockVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct FairnessReport {
    #[serde(with = "crate::rat::pq")]
    pub alpha: Rational,
    pub blocks: Vec<BlockReport>,
}

impl FairnessReport {
    pub fn all_fair(&self) -> bool {
        self.blocks.iter().all(|b| b.verdict == BlockVerdict::Fair)
    }

    pub fn all_almost_fair(&self) -> bool {
        self.blocks.iter().all(|b| b.verdict != BlockVerdict::Fail)
    }
}

/// Scores `s` against every block of the partition at fairness level `alpha`.
pub fn fairness_report(s: &ElementSet, part: &Partition, alpha: &Rational) -> Result<FairnessReport> {
    if s.universe() != part.universe() {
        return Err(Error::UniverseMismatch { expected: part.universe(), got: s.universe() });
    }
    let blocks = part
        .blocks()
        .iter()
        .map(|block| {
            let size = block.len();
            let required_fair = rat::floor_times(alpha, size);
            let required_almost = required_fair - 1;
            let achieved = s.intersection(block).len();
            let verdict = if achieved as i64 >= required_fair {
                BlockVerdict::Fair
            } else if achieved as i64 >= required_almost {
                BlockVerdict::Almost
            } else {
                BlockVerdict::Fail
            };
            BlockReport { block: *block, size, required_fair, required_almost, achieved, verdict }
        })
        .collect();
    Ok(FairnessReport { alpha: alpha.clone(), blocks })
}

/// The fairness parameter of the two-block theorem: `1/ζ − 1/n`.
pub fn delta(zeta: &Rational, n: usize) -> Rational {
    assert!(n >= 1, "delta needs a nonempty ground set");
    zeta.recip() - rat::ratio(1, n as i64)
}

/// A (1/ζ)-fair representative: an independent set meeting every block
/// `A_i` in at least `⌊|A_i| / ζ⌋` elements. Realized by intersecting with
/// the partition matroid capped at those floors; reaching their sum is
/// guaranteed, so falling short is fatal.
pub fn fair_rep_matroid(m: &Matroid, part: &Partition) -> Result<ElementSet> {
    let n = m.ground_size();
    if part.universe() != n {
        return Err(Error::UniverseMismatch { expected: n, got: part.universe() });
    }
    let z = zeta(m)?;
    let inv = z.recip();
    let caps: Vec<usize> = part
        .blocks()
        .iter()
        .map(|b| rat::floor_times(&inv, b.len()) as usize)
        .collect();
    let target: usize = caps.iter().sum();
    let quota = Matroid::partition(n, part.blocks(), &caps)?;
    let d = Dimatroid::new(m.clone(), quota)?;
    let s = d.max_common_independent();
    if s.len() != target {
        return Err(Error::InvariantViolation {
            claim: "the matroid fair-representation theorem",
            detail: format!(
                "best quota-respecting independent set {s} has size {}, needs {target}",
                s.len()
            ),
        });
    }
    Ok(s)
}

/// Full audit trail of one two-block almost-fair computation.
#[derive(Clone, Debug, Serialize)]
pub struct FairRepTrace {
    pub n: usize,
    #[serde(with = "crate::rat::pq")]
    pub zeta: Rational,
    pub g: usize,
    #[serde(with = "crate::rat::pq")]
    pub delta: Rational,
    pub s: ElementSet,
    pub t: ElementSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk: Option<ExchangeWalk>,
    pub chosen: ElementSet,
    /// Position of `chosen` in the candidate chain `S, R_1, …, R_g, T`:
    /// 0 is `S`, `g + 1` is `T`.
    pub chain_index: usize,
}

/// An almost δ-fair representative of the 2-partition `(a, V∖a)`, with
/// δ = 1/ζ − 1/n and ζ = max(ζP, ζQ).
///
/// Takes the size-`g` common independent sets maximizing the overlap with
/// each side (`g = ⌊n/ζ⌋`); if neither qualifies on its own, walks the
/// exchange chain between them and returns the first qualifying set. The
/// chain must contain one; anything else is a fatal invariant violation.
pub fn fair_rep_two_blocks(d: &Dimatroid, a: &ElementSet) -> Result<FairRepTrace> {
    let n = d.ground_size();
    if a.universe() != n {
        return Err(Error::UniverseMismatch { expected: n, got: a.universe() });
    }
    d.require_loopless()?;
    let zp = zeta(d.p())?;
    let zq = zeta(d.q())?;
    let z = zp.max(zq);
    let g = rat::floor_to_i64(&(rat::from_usize(n) / &z)) as usize;
    let dlt = delta(&z, n);
    let b = a.complement();
    let part = Partition::two_blocks(a);

    let violation = |detail: String| Error::InvariantViolation {
        claim: "the almost-fair representation theorem",
        detail,
    };

    let s = d
        .max_marked_common_independent(a, g)
        .map_err(|e| violation(format!("size-{g} common independent sets must exist: {e}")))?;
    let t = d
        .max_marked_common_independent(&b, g)
        .map_err(|e| violation(format!("size-{g} common independent sets must exist: {e}")))?;

    // The side-maximizers dominate the fractional-cover support sets, which
    // include a δ-fair representative of each side.
    let fair_for = |set: &ElementSet, block: &ElementSet| -> bool {
        rat::from_usize(set.intersection(block).len()) >= &dlt * rat::from_usize(block.len())
    };
    if !fair_for(&s, a) {
        return Err(violation(format!("{s} misses the δ-fair share of {a}")));
    }
    if !fair_for(&t, &b) {
        return Err(violation(format!("{t} misses the δ-fair share of {b}")));
    }

    let qualifies = |set: &ElementSet| -> Result<bool> {
        Ok(fairness_report(set, &part, &dlt)?.all_almost_fair())
    };

    let build = |chosen: ElementSet, walk: Option<ExchangeWalk>, chain_index: usize| FairRepTrace {
        n,
        zeta: z.clone(),
        g,
        delta: dlt.clone(),
        s,
        t,
        walk,
        chosen,
        chain_index,
    };

    if qualifies(&s)? {
        return Ok(build(s, None, 0));
    }
    if qualifies(&t)? {
        return Ok(build(t, None, g + 1));
    }

    let walk = d.exchange_walk(&s, &t)?;
    let chain = walk.candidate_chain();
    let mut found = None;
    for (i, cand) in chain.iter().enumerate() {
        // Crossing step: an intermediate failing the δ-fair share of one
        // side is forced above the almost-fair share of the other.
        if 0 < i && i <= g {
            let almost_b = rat::from_usize(cand.intersection(&b).len())
                > &dlt * rat::from_usize(b.len()) - rat::ratio(1, 1);
            let almost_a = rat::from_usize(cand.intersection(a).len())
                > &dlt * rat::from_usize(a.len()) - rat::ratio(1, 1);
            if !fair_for(cand, a) && !almost_b {
                return Err(violation(format!("{cand} fails the crossing step toward {b}")));
            }
            if !fair_for(cand, &b) && !almost_a {
                return Err(violation(format!("{cand} fails the crossing step toward {a}")));
            }
        }
        if qualifies(cand)? {
            found = Some(i);
            break;
        }
    }
    match found {
        Some(i) => Ok(build(chain[i], Some(walk), i)),
        None => Err(violation("no set on the exchange chain is almost fair for both blocks".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn set(n: usize, members: &[usize]) -> ElementSet {
        ElementSet::from_members(n, members.iter().copied()).unwrap()
    }

    fn k4_graphic() -> Matroid {
        Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k4_example() -> Dimatroid {
        let parts = [set(6, &[0, 5]), set(6, &[1, 4]), set(6, &[2, 3])];
        let q = Matroid::partition(6, &parts, &[1, 1, 1]).unwrap();
        Dimatroid::new(k4_graphic(), q).unwrap()
    }

    fn c4_complex() -> Dimatroid {
        let p = Matroid::partition(4, &[set(4, &[0, 3]), set(4, &[1, 2])], &[1, 1]).unwrap();
        let q = Matroid::partition(4, &[set(4, &[0, 1]), set(4, &[2, 3])], &[1, 1]).unwrap();
        Dimatroid::new(p, q).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&ratio(2, 1), 6), ratio(1, 3));
        assert_eq!(delta(&ratio(2, 1), 4), ratio(1, 4));
        assert_eq!(delta(&ratio(5, 2), 10), ratio(3, 10));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(4, vec![set(4, &[0, 1]), set(4, &[2, 3])]).is_ok());
        assert!(Partition::new(4, vec![set(4, &[0, 1]), set(4, &[1, 2, 3])]).is_err());
        assert!(Partition::new(4, vec![set(4, &[0, 1]), set(4, &[2])]).is_err());
        // Degenerate blocks are allowed.
        let p = Partition::two_blocks(&ElementSet::empty(3));
        assert_eq!(p.num_blocks(), 2);
        assert_eq!(p.blocks()[1], ElementSet::full(3));
    }

    #[test]
    fn full_set_is_fair_at_alpha_one() {
        let part = Partition::new(5, vec![set(5, &[0, 1]), set(5, &[2, 3, 4])]).unwrap();
        let r = fairness_report(&ElementSet::full(5), &part, &ratio(1, 1)).unwrap();
        assert!(r.all_fair());
    }

    #[test]
    fn c4_matching_report() {
        let part = Partition::new(4, vec![set(4, &[0, 2]), set(4, &[1, 3])]).unwrap();
        let r = fairness_report(&set(4, &[0, 2]), &part, &ratio(1, 2)).unwrap();
        assert_eq!(r.blocks[0].verdict, BlockVerdict::Fair);
        assert_eq!(r.blocks[0].achieved, 2);
        assert_eq!(r.blocks[0].required_fair, 1);
        assert_eq!(r.blocks[1].verdict, BlockVerdict::Almost);
        assert_eq!(r.blocks[1].achieved, 0);
        assert_eq!(r.blocks[1].required_almost, 0);
    }

    #[test]
    fn empty_set_thresholds() {
        let part = Partition::new(5, vec![set(5, &[0, 1]), set(5, &[2, 3, 4])]).unwrap();
        let r = fairness_report(&ElementSet::empty(5), &part, &ratio(1, 2)).unwrap();
        // ⌊2/2⌋−1 = 0 and ⌊3/2⌋−1 = 0: both blocks almost-fair.
        assert!(r.all_almost_fair());
        assert!(!r.all_fair());
    }

    #[test]
    fn fair_rep_on_k4_meets_every_matching() {
        let m = k4_graphic();
        let part = Partition::new(
            6,
            vec![set(6, &[0, 5]), set(6, &[1, 4]), set(6, &[2, 3])],
        )
        .unwrap();
        let s = fair_rep_matroid(&m, &part).unwrap();
        assert!(m.is_independent(&s).unwrap());
        for b in part.blocks() {
            assert!(!s.intersection(b).is_empty());
        }
    }

    #[test]
    fn fair_rep_on_free_matroid_returns_everything() {
        let m = Matroid::uniform(5, 5).unwrap();
        let part = Partition::new(5, vec![set(5, &[0, 1, 2]), set(5, &[3, 4])]).unwrap();
        let s = fair_rep_matroid(&m, &part).unwrap();
        assert_eq!(s, ElementSet::full(5));
    }

    #[test]
    fn fair_rep_uniform_63() {
        let m = Matroid::uniform(6, 3).unwrap();
        let part = Partition::new(6, vec![set(6, &[0, 1, 2, 3]), set(6, &[4, 5])]).unwrap();
        let s = fair_rep_matroid(&m, &part).unwrap();
        assert!(s.intersection(&part.blocks()[0]).len() >= 2);
        assert!(!s.intersection(&part.blocks()[1]).is_empty());
    }

    #[test]
    fn two_blocks_on_k4_example() {
        let d = k4_example();
        let a = set(6, &[0, 5, 1, 4]); // two matchings
        let trace = fair_rep_two_blocks(&d, &a).unwrap();
        assert_eq!(trace.n, 6);
        assert_eq!(trace.zeta, ratio(2, 1));
        assert_eq!(trace.g, 3);
        assert_eq!(trace.delta, ratio(1, 3));
        assert!(d.is_common_independent(&trace.chosen).unwrap());
        let report =
            fairness_report(&trace.chosen, &Partition::two_blocks(&a), &trace.delta).unwrap();
        assert!(report.all_almost_fair());
    }

    #[test]
    fn two_blocks_on_c4() {
        let d = c4_complex();
        let a = set(4, &[0, 2]);
        let trace = fair_rep_two_blocks(&d, &a).unwrap();
        assert_eq!(trace.g, 2);
        assert_eq!(trace.delta, ratio(1, 4));
        assert_eq!(trace.chosen.len(), 2);
    }

    #[test]
    fn two_blocks_walks_when_both_side_maximizers_fail() {
        // Uniform pair split down the middle: the A-maximizer sits entirely
        // inside A and misses B's floor, symmetrically for the B-maximizer,
        // so the answer lives strictly inside the exchange chain.
        let d = Dimatroid::new(Matroid::uniform(10, 5).unwrap(), Matroid::uniform(10, 5).unwrap())
            .unwrap();
        let a = ElementSet::from_members(10, 0..5).unwrap();
        let trace = fair_rep_two_blocks(&d, &a).unwrap();
        assert_eq!(trace.g, 5);
        assert_eq!(trace.delta, ratio(2, 5));
        assert!(trace.walk.is_some());
        assert!(0 < trace.chain_index && trace.chain_index <= trace.g + 1);
        let report =
            fairness_report(&trace.chosen, &Partition::two_blocks(&a), &trace.delta).unwrap();
        assert!(report.all_almost_fair());
        trace.walk.unwrap().verify(&d).unwrap();
    }

    #[test]
    fn two_blocks_on_free_pair_short_circuits() {
        let d = Dimatroid::new(Matroid::uniform(5, 5).unwrap(), Matroid::uniform(5, 5).unwrap())
            .unwrap();
        let a = set(5, &[1, 3]);
        let trace = fair_rep_two_blocks(&d, &a).unwrap();
        assert_eq!(trace.chosen, ElementSet::full(5));
        assert!(trace.walk.is_none());
        assert_eq!(trace.chain_index, 0);
    }

    #[test]
    fn two_blocks_with_degenerate_block() {
        let d = k4_example();
        let trace = fair_rep_two_blocks(&d, &ElementSet::empty(6)).unwrap();
        assert_eq!(trace.chosen.len(), 3);
        let trace = fair_rep_two_blocks(&d, &ElementSet::full(6)).unwrap();
        assert_eq!(trace.chosen.len(), 3);
    }

    #[test]
    fn two_blocks_rejects_loops() {
        let loopy = Matroid::graphic(3, &[(0, 0), (1, 2)]).unwrap();
        let d = Dimatroid::new(loopy.clone(), loopy).unwrap();
        assert!(matches!(
            fair_rep_two_blocks(&d, &ElementSet::empty(2)),
            Err(Error::Loops(_))
        ));
    }
}
