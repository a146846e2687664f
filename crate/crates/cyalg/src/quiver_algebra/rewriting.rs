use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num::One;

use super::path::{NCPoly, Path};
use super::presentation::GradedQuiverPresentation;
use super::quiver::{ArrowId, Quiver};
use super::QuiverError;
use crate::linalg::Q;

/// `lead -> tail`; every path in `tail` is smaller than `lead`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lead: Path,
    pub tail: NCPoly,
}

impl Rule {
    /// The relation `lead - tail`.
    pub fn as_poly(&self) -> NCPoly {
        let mut p = self.tail.scale(&-Q::one());
        p.add_term(Q::one(), self.lead.clone());
        p
    }
}

/// Rewriting rules confluent on all overlaps of weight at most `cap`.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    quiver: Quiver,
    rules: Vec<Rule>,
    cap: u32,
    skipped_overlaps: usize,
    index: HashMap<Vec<ArrowId>, usize>,
    lead_lengths: Vec<usize>,
}

impl RewritingSystem {
    fn empty(quiver: Quiver, cap: u32) -> Self {
        Self {
            quiver,
            rules: Vec::new(),
            cap,
            skipped_overlaps: 0,
            index: HashMap::new(),
            lead_lengths: Vec::new(),
        }
    }

    fn rebuild_index(&mut self) {
        self.index = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead.arrows().to_vec(), i))
            .collect();
        let mut ls: Vec<usize> = self.rules.iter().map(|r| r.lead.len()).collect();
        ls.sort_unstable();
        ls.dedup();
        self.lead_lengths = ls;
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Overlaps above the cap that completion did not resolve.
    pub fn skipped_overlaps(&self) -> usize {
        self.skipped_overlaps
    }

    /// First occurrence `(position, rule)` of a rule lead inside `arrows`.
    fn find_lead(&self, arrows: &[ArrowId]) -> Option<(usize, usize)> {
        for start in 0..arrows.len() {
            for &l in &self.lead_lengths {
                if start + l > arrows.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&arrows[start..start + l]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    /// True if no rule lead ends at the last arrow of `arrows`.
    pub(crate) fn suffix_is_normal(&self, arrows: &[ArrowId]) -> bool {
        let n = arrows.len();
        self.lead_lengths
            .iter()
            .all(|&l| l > n || !self.index.contains_key(&arrows[n - l..]))
    }

    pub fn is_normal(&self, p: &Path) -> bool {
        self.find_lead(p.arrows()).is_none()
    }

    pub fn reduce(&self, f: &NCPoly) -> NCPoly {
        let mut work = f.clone();
        let mut out = NCPoly::zero();
        while let Some((p, c)) = work.pop_lead() {
            match self.find_lead(p.arrows()) {
                None => out.add_term(c, p),
                Some((pos, r)) => {
                    let rule = &self.rules[r];
                    let left = p.subpath(&self.quiver, 0, pos);
                    let right = p.subpath(&self.quiver, pos + rule.lead.len(), p.len());
                    for (t, tc) in rule.tail.terms() {
                        let w = left
                            .compose(t)
                            .and_then(|lt| lt.compose(&right))
                            .expect("subpaths compose");
                        work.add_term(&c * tc, w);
                    }
                }
            }
        }
        out
    }

    pub fn reduce_path(&self, p: &Path) -> NCPoly {
        self.reduce(&NCPoly::from_path(p.clone()))
    }
}

struct Pair {
    a: usize,
    b: usize,
    overlap: usize,
}

/// Truncated Buchberger completion of `pres`'s relations: all overlaps of
/// weight at most `cap` are resolved, so normal forms are exact up to `cap`
/// for weight-homogeneous relations.
pub fn truncated_rewriting(
    pres: &GradedQuiverPresentation,
    cap: u32,
) -> Result<RewritingSystem, QuiverError> {
    let needed = pres.max_relation_weight();
    if cap < needed {
        return Err(QuiverError::CapTooSmall { cap, needed });
    }
    let q = &pres.quiver;
    let mut sys = RewritingSystem::empty(q.clone(), cap);
    let mut alive: Vec<bool> = Vec::new();
    let mut all: Vec<Rule> = Vec::new();
    let mut heap: BinaryHeap<(Reverse<u32>, Reverse<usize>)> = BinaryHeap::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: Vec<NCPoly> = pres.relations.clone();
    pending.sort_by(|a, b| b.lead().map(|x| x.0).cmp(&a.lead().map(|x| x.0)));

    loop {
        while let Some(f) = pending.pop() {
            let r = sys.reduce(&f);
            let Some((lead, c)) = r.lead() else { continue };
            if lead.is_lazy() {
                return Err(QuiverError::DegenerateRelation(r.display(q)));
            }
            let lead = lead.clone();
            let inv = c.recip();
            let mut tail = r.scale(&inv);
            tail.pop_lead();
            let tail = tail.scale(&-Q::one());
            let k = all.len();
            // Rules whose lead contains the new lead are superseded.
            for (i, old) in all.iter().enumerate() {
                if alive[i] && contains_word(old.lead.arrows(), lead.arrows()) {
                    alive[i] = false;
                    pending.push(old.as_poly());
                }
            }
            all.push(Rule { lead, tail });
            alive.push(true);
            sys.rules = all
                .iter()
                .zip(&alive)
                .filter(|(_, a)| **a)
                .map(|(r, _)| r.clone())
                .collect();
            sys.rebuild_index();
            for i in 0..=k {
                if !alive[i] {
                    continue;
                }
                let mut orders = vec![(i, k)];
                if i != k {
                    orders.push((k, i));
                }
                for (x, y) in orders {
                    for ov in overlaps(all[x].lead.arrows(), all[y].lead.arrows()) {
                        let extra: u32 = all[y].lead.arrows()[ov..]
                            .iter()
                            .map(|a| q.weight(*a))
                            .sum();
                        let w = all[x].lead.weight() + extra;
                        if w > cap {
                            sys.skipped_overlaps += 1;
                            continue;
                        }
                        heap.push((Reverse(w), Reverse(pairs.len())));
                        pairs.push(Pair {
                            a: x,
                            b: y,
                            overlap: ov,
                        });
                    }
                }
            }
        }
        let Some((_, Reverse(pi))) = heap.pop() else {
            break;
        };
        let Pair { a, b, overlap } = pairs[pi];
        if !alive[a] || !alive[b] {
            continue;
        }
        let (ra, rb) = (&all[a], &all[b]);
        let la = ra.lead.len();
        let right = rb.lead.subpath(q, overlap, rb.lead.len());
        let left = ra.lead.subpath(q, 0, la - overlap);
        let s = ra
            .tail
            .right_mul_path(&right)
            .sub(&rb.tail.left_mul_path(&left));
        if !s.is_zero() {
            pending.push(s);
        }
    }
    sys.rules.sort_by(|x, y| x.lead.cmp(&y.lead));
    sys.rebuild_index();
    for i in 0..sys.rules.len() {
        let t = sys.reduce(&sys.rules[i].tail);
        sys.rules[i].tail = t;
    }
    Ok(sys)
}

/// Outcome of reducing two relation sets modulo each other.
#[derive(Clone, Debug)]
pub struct IdealComparison {
    /// Relations of the first set not reducing to zero modulo the second.
    pub lhs_residues: Vec<NCPoly>,
    /// Relations of the second set not reducing to zero modulo the first.
    pub rhs_residues: Vec<NCPoly>,
}

impl IdealComparison {
    pub fn agree(&self) -> bool {
        self.lhs_residues.is_empty() && self.rhs_residues.is_empty()
    }
}

/// Reduces each set of relations modulo a truncated rewriting system for
/// the other. Relations heavier than `cap` are skipped.
pub fn compare_ideals(
    quiver: &Quiver,
    lhs: &[NCPoly],
    rhs: &[NCPoly],
    cap: u32,
) -> Result<IdealComparison, QuiverError> {
    let residues = |gens: &[NCPoly], targets: &[NCPoly]| -> Result<Vec<NCPoly>, QuiverError> {
        let pres = GradedQuiverPresentation::new(quiver.clone(), gens.to_vec())?;
        let sys = truncated_rewriting(&pres, cap.max(pres.max_relation_weight()))?;
        Ok(targets
            .iter()
            .filter(|r| r.max_weight() <= cap)
            .map(|r| sys.reduce(r))
            .filter(|r| !r.is_zero())
            .collect())
    };
    Ok(IdealComparison {
        lhs_residues: residues(rhs, lhs)?,
        rhs_residues: residues(lhs, rhs)?,
    })
}

fn contains_word(hay: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Proper overlap lengths `k` with suffix of `a` of length `k` equal to the
/// prefix of `b` of length `k`.
fn overlaps(a: &[ArrowId], b: &[ArrowId]) -> Vec<usize> {
    let m = a.len().min(b.len());
    (1..m).filter(|&k| a[a.len() - k..] == b[..k]).collect()
}
