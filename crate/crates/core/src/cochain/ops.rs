//! Maps between cohomology groups, computed on representing cocycles.
//!
//! Every operation evaluates the resulting cocycle at the parameter tuples of
//! the target chart and then solves for class coordinates. A result that is
//! not a cocycle surfaces as `NotInNumerator`, which means a bug rather than
//! bad input.

use std::sync::Arc;

use super::chart::faces;
use super::cohomology::{CohClass, CohomologyGroup};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupHom};

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    std::ptr::eq(a, b) || a.digest() == b.digest()
}

fn expect(space: &CohomologyGroup, group: &FiniteGroup, degree: usize, m: u64) -> Result<()> {
    if !same_group(space.group(), group) {
        return Err(Error::GroupMismatch);
    }
    if space.degree() != degree {
        return Err(Error::DegreeMismatch { expected: degree, found: space.degree() });
    }
    if space.modulus() != m {
        return Err(Error::ModulusMismatch(m, space.modulus()));
    }
    Ok(())
}

/// `f^*: H^n(G) -> H^n(H)` for `f: H -> G`; `target` is `H^n(H)`.
pub fn pullback(f: &GroupHom, x: &CohClass, target: &Arc<CohomologyGroup>) -> Result<CohClass> {
    expect(x.space(), f.target(), x.degree(), x.modulus())?;
    expect(target, f.source(), x.degree(), x.modulus())?;
    let src = x.space();
    let p = x.params();
    let params = target.params_from(|t| {
        let ft: Vec<usize> = t.iter().map(|&g| f.apply(g)).collect();
        src.eval(&p, &ft)
    });
    CohClass::from_params(target.clone(), &params)
}

/// Right coset representatives of the image of `inclusion`, identity first.
pub fn right_coset_reps(inclusion: &GroupHom) -> Vec<usize> {
    let g = inclusion.target();
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    let order = std::iter::once(g.identity()).chain(g.elements());
    for t in order {
        if seen[t] {
            continue;
        }
        reps.push(t);
        for &h in inclusion.map() {
            seen[g.mul(h, t)] = true;
        }
    }
    reps
}

/// Corestriction `H^n(H) -> H^n(G)` along an injective `inclusion: H -> G`.
pub fn transfer(inclusion: &GroupHom, x: &CohClass, target: &Arc<CohomologyGroup>) -> Result<CohClass> {
    transfer_with_reps(inclusion, x, target, &right_coset_reps(inclusion))
}

/// Corestriction computed with the given right coset representatives.
pub fn transfer_with_reps(
    inclusion: &GroupHom,
    x: &CohClass,
    target: &Arc<CohomologyGroup>,
    reps: &[usize],
) -> Result<CohClass> {
    expect(x.space(), inclusion.source(), x.degree(), x.modulus())?;
    expect(target, inclusion.target(), x.degree(), x.modulus())?;
    let g = inclusion.target();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &h) in inclusion.map().iter().enumerate() {
        if local[h] != usize::MAX {
            return Err(Error::PreconditionViolated("transfer needs an injective inclusion".into()));
        }
        local[h] = i;
    }
    // coset of each element, and the chosen representative of each coset
    let mut coset = vec![usize::MAX; g.order()];
    for (c, &t) in reps.iter().enumerate() {
        for &h in inclusion.map() {
            let y = g.mul(h, t);
            if coset[y] != usize::MAX {
                return Err(Error::PreconditionViolated("coset representatives overlap".into()));
            }
            coset[y] = c;
        }
    }
    if coset.contains(&usize::MAX) {
        return Err(Error::PreconditionViolated("coset representatives do not cover the group".into()));
    }
    let src = x.space();
    let p = x.params();
    let m = x.modulus();
    let params = target.params_from(|tuple| {
        let mut acc = 0u64;
        let mut hs = vec![0usize; tuple.len()];
        for &t0 in reps {
            let mut t = t0;
            for (i, &gi) in tuple.iter().enumerate() {
                let y = g.mul(t, gi);
                let next = reps[coset[y]];
                hs[i] = local[g.mul(y, g.inv(next))];
                t = next;
            }
            acc = (acc + src.eval(&p, &hs)) % m;
        }
        acc
    });
    CohClass::from_params(target.clone(), &params)
}

/// `x ∪ y` via the Alexander-Whitney formula.
pub fn cup(x: &CohClass, y: &CohClass, target: &Arc<CohomologyGroup>) -> Result<CohClass> {
    let (p, q) = (x.degree(), y.degree());
    expect(y.space(), x.space().group(), q, x.modulus())?;
    expect(target, x.space().group(), p + q, x.modulus())?;
    let (xs, ys) = (x.space(), y.space());
    let (xp, yp) = (x.params(), y.params());
    let m = x.modulus();
    let params = target.params_from(|t| {
        let a = xs.eval(&xp, &t[..p]);
        let b = ys.eval(&yp, &t[p..]);
        crate::exactla::arith::mul_mod(a, b, m)
    });
    CohClass::from_params(target.clone(), &params)
}

/// Connecting map of `0 -> Z/m -> Z/m^2 -> Z/m -> 0`, landing in
/// `H^{n+1}(G, Z/m)`.
pub fn bockstein(x: &CohClass, target: &Arc<CohomologyGroup>) -> Result<CohClass> {
    let n = x.degree();
    let m = x.modulus();
    expect(target, x.space().group(), n + 1, m)?;
    let src = x.space();
    let group = src.group().clone();
    let p = x.params();
    let mut bad = std::sync::atomic::AtomicBool::new(false);
    let params = target.params_from(|t| {
        // d of the lift to [0, m), divided by m
        let mut acc: i64 = 0;
        for (i, face) in faces(&group, t).enumerate() {
            let v = src.eval(&p, &face) as i64;
            acc += if i % 2 == 0 { v } else { -v };
        }
        if acc % m as i64 != 0 {
            bad.store(true, std::sync::atomic::Ordering::Relaxed);
        }
        (acc / m as i64).rem_euclid(m as i64) as u64
    });
    if *bad.get_mut() {
        return Err(Error::ConsistencyFailure("bockstein of a non-cocycle".into()));
    }
    CohClass::from_params(target.clone(), &params)
}
