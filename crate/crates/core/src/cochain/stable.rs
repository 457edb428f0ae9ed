//! Passage from `Z/m0` to `Q/Z` coefficients.
//!
//! With `Z/m0 -> Q/Z`, `1 -> 1/m0`, the image of `H^n(G, Z/m0)` in
//! `H^n(G, Q/Z)` is the quotient by the kernel `K`, the classes that die in
//! `H^n(G, Z/m0^{k+1})` under multiplication by `m0^k` for some `k`. When
//! `m0` is a multiple of `|G|` the image is all of `H^n(G, Q/Z)`.

use std::sync::Arc;

use super::cohomology::CohomologyGroup;
use crate::error::{Error, Result};
use crate::exactla::{AbHom, AbSubgroup, FinAbGroup, MAX_MODULUS};

/// Hard cap on the number of levels tried before giving up.
const MAX_LEVELS: u32 = 8;

#[derive(Debug)]
pub struct StableCohomology {
    base: Arc<CohomologyGroup>,
    kernel: AbSubgroup,
    quotient: FinAbGroup,
    projection: AbHom,
    levels: u32,
}

impl StableCohomology {
    /// `level(m)` must return `H^n(G, Z/m)` for the group and degree of `base`.
    pub fn compute(
        base: Arc<CohomologyGroup>,
        level: impl Fn(u64) -> Result<Arc<CohomologyGroup>>,
    ) -> Result<StableCohomology> {
        let m0 = base.modulus();
        let source = base.abelian().clone();
        let mut prev = AbSubgroup::trivial(&source);
        let mut levels = 0;
        for k in 1..=MAX_LEVELS {
            let scale = m0.pow(k);
            let mk = match scale.checked_mul(m0) {
                Some(mk) if mk <= MAX_MODULUS => mk,
                _ => {
                    let required = (m0 as u128).pow(k + 1).min(u64::MAX as u128) as u64;
                    return Err(Error::BudgetExceeded {
                        what: "Q/Z stabilization modulus".into(),
                        required,
                        limit: MAX_MODULUS,
                    });
                }
            };
            let hk = level(mk)?;
            let matrix = (0..source.rank())
                .map(|j| {
                    let p: Vec<u64> = base.generator_params(j).iter().map(|&x| x * scale).collect();
                    hk.coordinates(&p)
                })
                .collect::<Result<Vec<_>>>()?;
            let kk = AbHom::new(source.clone(), hk.abelian().clone(), matrix)?.kernel();
            levels = k;
            // the kernels increase with k
            let stable = kk.order() == prev.order();
            prev = kk;
            if stable {
                break;
            }
            if k == MAX_LEVELS {
                return Err(Error::ConsistencyFailure("Q/Z stabilization did not settle".into()));
            }
        }
        let (quotient, projection) = prev.quotient();
        Ok(StableCohomology { base, kernel: prev, quotient, projection, levels })
    }

    pub fn base(&self) -> &Arc<CohomologyGroup> {
        &self.base
    }

    /// Classes of `H^n(G, Z/m0)` that vanish in `Q/Z` coefficients.
    pub fn kernel(&self) -> &AbSubgroup {
        &self.kernel
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.quotient
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.quotient.factors()
    }

    /// `H^n(G, Z/m0) -> H^n(G, Q/Z)`.
    pub fn projection(&self) -> &AbHom {
        &self.projection
    }

    /// Number of extra moduli `m0^2, m0^3, ..` that were computed.
    pub fn levels(&self) -> u32 {
        self.levels
    }
}
