//! Fixed-width Graver basis engine.
//!
//! Two algorithms share the same reduction machinery:
//!
//! * [`project_and_lift`] picks `k = rank(L)` coordinates on which the lattice
//!   projects bijectively onto `Z^k` (whose Graver basis is `±e_i`), then adds
//!   the remaining coordinates one at a time. When coordinate `c` is added,
//!   only pairs `f + g` whose projections are sign-compatible and whose
//!   `c`-entries have strictly opposite signs need to reduce to zero.
//! * [`completion`] is the plain completion: seed with a lattice basis and
//!   its negatives, reduce every non-sign-compatible pairwise sum, keep the
//!   irreducible remainders, and repeat until nothing new appears.
//!
//! Both finish with an interreduction pass, so the output is exactly the set
//! of ⊑-minimal lattice vectors. All arithmetic is checked against the entry
//! budget.

use super::trie::SignTrie;
use super::GraverBudget;
use crate::error::{Error, Result};

pub(crate) type Vector = Vec<i64>;

const MAX_COLUMNS: usize = 128;

#[derive(Clone, Copy)]
struct Masks {
    pos: u128,
    neg: u128,
}

impl Masks {
    fn of(v: &[i64], coords: &[usize]) -> Self {
        let mut m = Masks { pos: 0, neg: 0 };
        for &c in coords {
            if v[c] > 0 {
                m.pos |= 1 << c;
            } else if v[c] < 0 {
                m.neg |= 1 << c;
            }
        }
        m
    }

    fn compatible(self, other: Masks) -> bool {
        self.pos & other.neg == 0 && self.neg & other.pos == 0
    }

    fn negated(self) -> Masks {
        Masks { pos: self.neg, neg: self.pos }
    }
}

/// Working set of representatives. Store slot `2i` holds representative `i`
/// and slot `2i + 1` its negative; both live in the trie.
struct Workspace<'a> {
    coords: Vec<usize>,
    store: Vec<Vector>,
    alive: Vec<bool>,
    trie: SignTrie,
    budget: &'a GraverBudget,
}

impl<'a> Workspace<'a> {
    fn new(coords: Vec<usize>, budget: &'a GraverBudget) -> Self {
        Self { trie: SignTrie::new(coords.clone()), coords, store: Vec::new(), alive: Vec::new(), budget }
    }

    fn reps(&self) -> usize {
        self.store.len() / 2
    }

    fn rep(&self, i: usize) -> &Vector {
        &self.store[2 * i]
    }

    fn push(&mut self, v: Vector) -> Result<usize> {
        if self.reps() >= self.budget.max_elements {
            return Err(Error::BudgetExceeded {
                what: "Graver completion element count",
                limit: self.budget.max_elements as u64,
            });
        }
        let neg: Vector = v.iter().map(|x| -x).collect();
        let id = self.store.len() as u32;
        self.trie.insert(id, &v);
        self.trie.insert(id + 1, &neg);
        self.store.push(v);
        self.store.push(neg);
        self.alive.extend([true, true]);
        Ok(self.reps() - 1)
    }

    /// Conformal normal form of `s`; `None` when it reduces to zero.
    fn normal_form(&self, mut s: Vector) -> Result<Option<Vector>> {
        loop {
            if self.coords.iter().all(|&c| s[c] == 0) {
                return Ok(None);
            }
            let alive = &self.alive;
            let Some(id) = self.trie.find_reducer(&s, &self.store, |id| alive[id as usize]) else {
                return Ok(Some(s));
            };
            let w = &self.store[id as usize];
            let lambda = self
                .coords
                .iter()
                .filter(|&&c| w[c] != 0)
                .map(|&c| s[c] / w[c])
                .min()
                .ok_or_else(|| Error::Internal("zero reducer in Graver workspace".into()))?;
            s = combine(&s, w, -lambda, self.budget.max_entry)?;
        }
    }

    fn interreduce(&mut self) {
        for i in 0..self.reps() {
            if !self.alive[2 * i] {
                continue;
            }
            let me = (2 * i) as u32;
            let alive = &self.alive;
            let hit = self.trie.find_reducer(&self.store[2 * i], &self.store, |id| id != me && alive[id as usize]);
            if hit.is_some() {
                self.alive[2 * i] = false;
                self.alive[2 * i + 1] = false;
            }
        }
    }

    fn survivors(self) -> Vec<Vector> {
        self.store.into_iter().zip(self.alive).filter(|(_, a)| *a).map(|(v, _)| v).collect()
    }

    fn surviving_reps(&self) -> Vec<Vector> {
        (0..self.reps()).filter(|&i| self.alive[2 * i]).map(|i| self.rep(i).clone()).collect()
    }
}

/// `a + k * b`, entrywise checked against `max_entry`.
fn combine(a: &[i64], b: &[i64], k: i64, max_entry: i64) -> Result<Vector> {
    let overflow = || Error::BudgetExceeded { what: "Graver entry size", limit: max_entry as u64 };
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let v = y.checked_mul(k).and_then(|p| x.checked_add(p)).ok_or_else(overflow)?;
            if v.abs() > max_entry {
                Err(overflow())
            } else {
                Ok(v)
            }
        })
        .collect()
}

fn orient_first_nonzero_positive(v: &mut Vector) {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

fn check_width(n: usize) -> Result<()> {
    if n > MAX_COLUMNS {
        return Err(Error::BudgetExceeded { what: "Graver engine column count", limit: MAX_COLUMNS as u64 });
    }
    Ok(())
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Row-reduces `basis` so that on the returned coordinates it is the
/// identity matrix. `None` if the greedy search finds no such coordinates
/// (or an intermediate entry overflows).
fn unimodular_frame(basis: &mut [Vector], n: usize) -> Option<Vec<usize>> {
    let k = basis.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for t in 0..k {
        let free = (0..n).filter(|c| !chosen.contains(c));
        let unit = free.clone().find_map(|c| (t..k).find(|&r| basis[r][c].abs() == 1).map(|r| (c, r)));
        let col = match unit {
            Some((c, r)) => {
                basis.swap(t, r);
                c
            }
            None => {
                let c = free.clone().find(|&c| (t..k).fold(0i64, |g, r| gcd(g, basis[r][c])) == 1)?;
                // fold rows t.. into row t with unimodular 2x2 steps
                for r in t + 1..k {
                    let (a, b) = (basis[t][c], basis[r][c]);
                    if b == 0 {
                        continue;
                    }
                    let (g, x, y) = ext_gcd(a, b);
                    let (ua, ub) = (a / g, b / g);
                    let mut top = Vec::with_capacity(n);
                    let mut low = Vec::with_capacity(n);
                    for (&p, &q) in basis[t].iter().zip(&basis[r]) {
                        top.push(x.checked_mul(p)?.checked_add(y.checked_mul(q)?)?);
                        low.push(ua.checked_mul(q)?.checked_sub(ub.checked_mul(p)?)?);
                    }
                    basis[t] = top;
                    basis[r] = low;
                }
                c
            }
        };
        if basis[t][col] < 0 {
            for x in basis[t].iter_mut() {
                *x = -*x;
            }
        }
        if basis[t][col] != 1 {
            return None;
        }
        let pivot = basis[t].clone();
        for (r, row) in basis.iter_mut().enumerate().take(k) {
            let f = row[col];
            if r == t || f == 0 {
                continue;
            }
            for (x, &p) in row.iter_mut().zip(&pivot) {
                *x = x.checked_sub(f.checked_mul(p)?)?;
            }
        }
        chosen.push(col);
    }
    Some(chosen)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Graver basis (both signs) of the lattice spanned by `basis`, which must be
/// a basis of a saturated lattice in `Z^n`.
pub(crate) fn project_and_lift(mut basis: Vec<Vector>, n: usize, budget: &GraverBudget) -> Result<Vec<Vector>> {
    check_width(n)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let Some(frame) = unimodular_frame(&mut basis, n) else {
        return completion(basis, n, budget);
    };
    let rest: Vec<usize> = (0..n).filter(|c| !frame.contains(c)).collect();
    let mut reps = basis;
    let mut coords = frame;
    for &c in &rest {
        reps = lift_coordinate(reps, &coords, c, budget)?;
        coords.push(c);
    }
    Ok(reps
        .into_iter()
        .flat_map(|v| {
            let neg = v.iter().map(|x| -x).collect();
            [v, neg]
        })
        .collect())
}

/// One lifting step: `reps` are sign representatives of the Graver basis of
/// the projection onto `coords`; returns representatives for `coords + [c]`.
fn lift_coordinate(reps: Vec<Vector>, coords: &[usize], c: usize, budget: &GraverBudget) -> Result<Vec<Vector>> {
    let mut lifted = coords.to_vec();
    lifted.push(c);
    let mut ws = Workspace::new(lifted, budget);
    let mut masks: Vec<Masks> = Vec::new();
    let mut positive: Vec<usize> = Vec::new();

    let add = |ws: &mut Workspace, masks: &mut Vec<Masks>, positive: &mut Vec<usize>, mut v: Vector| -> Result<()> {
        if v[c] < 0 || (v[c] == 0 && v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)) {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        let pos_c = v[c] > 0;
        masks.push(Masks::of(&v, coords));
        let i = ws.push(v)?;
        if pos_c {
            positive.push(i);
        }
        Ok(())
    };

    for v in reps {
        add(&mut ws, &mut masks, &mut positive, v)?;
    }
    let mut i = 0;
    while i < positive.len() {
        let f = positive[i];
        for j in 0..i {
            let g = positive[j];
            // critical pair f + (-g)
            if !masks[f].compatible(masks[g].negated()) {
                continue;
            }
            let s = combine(ws.rep(f), ws.rep(g), -1, budget.max_entry)?;
            if let Some(r) = ws.normal_form(s)? {
                add(&mut ws, &mut masks, &mut positive, r)?;
            }
        }
        i += 1;
    }
    ws.interreduce();
    Ok(ws.surviving_reps())
}

/// Plain completion on all coordinates at once; `basis` must generate the
/// lattice.
pub(crate) fn completion(basis: Vec<Vector>, n: usize, budget: &GraverBudget) -> Result<Vec<Vector>> {
    check_width(n)?;
    let all: Vec<usize> = (0..n).collect();
    let mut ws = Workspace::new(all.clone(), budget);
    let mut masks: Vec<Masks> = Vec::new();
    for mut v in basis {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        orient_first_nonzero_positive(&mut v);
        masks.push(Masks::of(&v, &all));
        ws.push(v)?;
    }
    let mut i = 0;
    while i < ws.reps() {
        for j in 0..i {
            for sign in [1i64, -1] {
                let mg = if sign == 1 { masks[j] } else { masks[j].negated() };
                if masks[i].compatible(mg) {
                    continue;
                }
                let s = combine(ws.rep(i), ws.rep(j), sign, budget.max_entry)?;
                if let Some(mut r) = ws.normal_form(s)? {
                    orient_first_nonzero_positive(&mut r);
                    masks.push(Masks::of(&r, &all));
                    ws.push(r)?;
                }
            }
        }
        i += 1;
    }
    ws.interreduce();
    Ok(ws.survivors())
}
