use std::collections::BTreeSet;

use super::ring::{coprime, divides, lcm, sub, DPoly, Exps, Ring};
use super::{Fuel, FuelExhausted};

/// Full reduction of `p` modulo `basis` (every term, not only the head).
pub(crate) fn reduce(ring: &Ring, p: DPoly, basis: &[DPoly]) -> DPoly {
    let mut p = p;
    let mut rem: Vec<(Exps, crate::algebra::Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.last().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &m)) {
            Some(g) => {
                let (gm, gc) = g.lead().unwrap();
                let shift = sub(&m, gm);
                let coeff = &c / gc;
                p = ring.sub_scaled(&p, &coeff, &shift, g);
            }
            None => {
                p.terms.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    DPoly { terms: rem }
}

fn s_polynomial(ring: &Ring, f: &DPoly, g: &DPoly) -> DPoly {
    let (fm, fc) = f.lead().unwrap();
    let (gm, gc) = g.lead().unwrap();
    let l = lcm(fm, gm);
    // (l/fm)/fc * f - (l/gm)/gc * g
    let fpart = ring.sub_scaled(&DPoly { terms: vec![] }, &-fc.recip(), &sub(&l, fm), f);
    ring.sub_scaled(&fpart, &gc.recip(), &sub(&l, gm), g)
}

/// Result of a completion run.
pub(crate) struct Completion {
    pub basis: Vec<DPoly>,
}

/// Buchberger's algorithm with the normal selection strategy and
/// Buchberger's two criteria. Returns the reduced monic basis, sorted by
/// increasing leading monomial. A nonzero constant short-circuits to `[1]`.
pub(crate) fn complete(ring: &Ring, gens: Vec<DPoly>, fuel: &Fuel) -> Result<Completion, FuelExhausted> {
    let mut basis: Vec<DPoly> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut spairs: u64 = 0;

    let one = |ring: &Ring| DPoly {
        terms: vec![(vec![0; ring.nvars()], num_traits::One::one())],
    };

    for g in gens {
        let g = reduce(ring, g, &basis);
        if g.is_zero() {
            continue;
        }
        let g = g.monic();
        if g.is_constant() {
            return Ok(Completion { basis: vec![one(ring)] });
        }
        let k = basis.len();
        for i in 0..k {
            pending.insert((i, k));
        }
        basis.push(g);
    }

    while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
        let la = lcm(basis[a.0].lm(), basis[a.1].lm());
        let lb = lcm(basis[b.0].lm(), basis[b.1].lm());
        ring.cmp(&la, &lb).then_with(|| (a.1, a.0).cmp(&(b.1, b.0)))
    }) {
        pending.remove(&(i, j));
        let (li, lj) = (basis[i].lm(), basis[j].lm());
        if coprime(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        spairs += 1;
        fuel.meter.record_spair();
        if spairs > fuel.max_spair_reductions {
            return Err(FuelExhausted::SPairs(fuel.max_spair_reductions));
        }
        let s = s_polynomial(ring, &basis[i], &basis[j]);
        let r = reduce(ring, s, &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return Ok(Completion { basis: vec![one(ring)] });
        }
        let k = basis.len();
        for i in 0..k {
            pending.insert((i, k));
        }
        basis.push(r);
        let terms: usize = basis.iter().map(|g| g.terms.len()).sum();
        if terms > fuel.max_terms {
            return Err(FuelExhausted::Terms(fuel.max_terms));
        }
    }

    Ok(Completion {
        basis: interreduce(ring, basis),
    })
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimal then reduced basis, monic, sorted by leading monomial.
fn interreduce(ring: &Ring, basis: Vec<DPoly>) -> Vec<DPoly> {
    let mut minimal: Vec<DPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<DPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let head = minimal[i].lead().unwrap().clone();
        let tail = DPoly {
            terms: minimal[i].terms[..minimal[i].terms.len() - 1].to_vec(),
        };
        let mut r = reduce(ring, tail, &others);
        r.terms.push(head);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    reduced
}
