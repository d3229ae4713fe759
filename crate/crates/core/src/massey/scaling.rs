use super::defining::DefiningSystem;
use crate::dga::{CohomologyClass, DgaModel};
use crate::error::{Error, Result};

/// Result of scaling position `k` of a defining system by a central cocycle.
#[derive(Clone, Debug)]
pub struct ScaledSystem {
    pub system: DefiningSystem,
    /// `c(Y) = sign * xi * c(X)` on the nose; `+1` whenever `|xi|` is even.
    pub sign: i8,
}

/// Given a defining system `X` for `<a_1, ..., a_n>` and a class `xi` with
/// representative `a`, builds `Y` for `<a_1, ..., xi a_k, ..., a_n>`:
/// `y_ij = s_i a x_ij` when `i <= k < j`, `y_ij = x_ij` otherwise, where
/// `s_i = (-1)^{|a| sum_{t=i}^{k-1} (|a_t| - 1)}`.
///
/// The signs make `Y` satisfy the defining relations exactly. For odd `|a|`
/// the resulting `c(Y)` is `xi c(X)` up to the returned sign.
pub fn scale_defining_system(
    model: &DgaModel,
    ds: &DefiningSystem,
    xi: &CohomologyClass,
    k: usize,
) -> Result<ScaledSystem> {
    let n = ds.arity();
    let degrees = (1..=n)
        .map(|i| {
            ds.get(i, i + 1)
                .map(|x| x.degree())
                .ok_or_else(|| Error::Usage(format!("defining system lacks entry ({i},{})", i + 1)))
        })
        .collect::<Result<Vec<u32>>>()?;
    if k == 0 || k > n {
        return Err(Error::Usage(format!("position {k} outside 1..={n}")));
    }
    let a = xi.representative();
    let odd = a.degree() % 2 == 1;
    let sign_at = |i: usize| -> i8 {
        let e: i64 = degrees[i - 1..k - 1].iter().map(|&d| d as i64 - 1).sum();
        if odd && e.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    };
    let p = model.presentation();
    let system = ds.map(|i, j, x| {
        if i <= k && k < j {
            let y = p.multiply(a, x)?;
            Ok(if sign_at(i) < 0 { y.neg() } else { y })
        } else {
            Ok(x.clone())
        }
    })?;
    let sign = sign_at(1) * if odd { -1 } else { 1 };
    Ok(ScaledSystem { system, sign })
}
