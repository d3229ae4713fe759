use crate::algebra::GradedVector;
use crate::dga::{CohomologyClass, DgaModel};
use crate::error::{Error, Result};

/// `<u>^k`: the special defining system with `x_ij` depending only on `j - i`.
#[derive(Clone, Debug)]
pub struct RestrictedPowerResult {
    pub base: CohomologyClass,
    pub exponent: u32,
    /// `x_1, ..., x_{k-1}`, as far as they could be built.
    pub chain: Vec<GradedVector>,
    pub value: Option<CohomologyClass>,
    /// The `r` at which `d x_r = sum bar(x_i) x_{r-i}` had no solution,
    /// with the reduced obstruction.
    pub failure: Option<(u32, GradedVector)>,
}

impl RestrictedPowerResult {
    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }
}

fn chain_sum(model: &DgaModel, chain: &[GradedVector], r: usize) -> Result<GradedVector> {
    let p = model.presentation();
    let mut acc: Option<GradedVector> = None;
    for i in 1..r {
        let term = p.multiply(&chain[i - 1].bar(), &chain[r - i - 1])?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    acc.ok_or_else(|| Error::Usage("empty chain sum".into()))
}

/// Builds `x_1 = rep(u)` and canonical primitives `x_2, ..., x_{k-1}`, then
/// takes the class of `sum_{i=1}^{k-1} bar(x_i) x_{k-i}`.
pub fn restricted_power(model: &DgaModel, u: &CohomologyClass, k: u32) -> Result<RestrictedPowerResult> {
    if k < 2 {
        return Err(Error::Usage(format!("exponent {k} is below 2")));
    }
    model.presentation().check(u.representative())?;
    if !model.is_cocycle(u.representative())? {
        return Err(Error::NotACocycle("base class representative".into()));
    }
    let d = u.degree() as i64;
    let k64 = k as i64;
    for r in 1..k64 {
        model.check_degree(r * d - (r - 1))?;
    }
    model.check_degree(k64 * d - k64 + 2)?;
    let canonical = model.class_of(u.representative())?;
    let mut chain = vec![canonical.representative().clone()];
    for r in 2..k as usize {
        let target = chain_sum(model, &chain, r)?;
        match model.solve_primitive(&target) {
            Ok(x) => chain.push(x.solution),
            Err(Error::NotABoundary { obstruction }) => {
                return Ok(RestrictedPowerResult {
                    base: u.clone(),
                    exponent: k,
                    chain,
                    value: None,
                    failure: Some((r as u32, *obstruction)),
                })
            }
            Err(e) => return Err(e),
        }
    }
    let top = chain_sum(model, &chain, k as usize)?;
    let value = model.class_of(&top)?;
    Ok(RestrictedPowerResult {
        base: u.clone(),
        exponent: k,
        chain,
        value: Some(value),
        failure: None,
    })
}
