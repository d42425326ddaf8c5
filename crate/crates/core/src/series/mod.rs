//! Expansion of the closed parametric generating functions of rooted
//! hypermaps into power series.
//!
//! Univariate series count by darts (`z`), for genus 0 through 6, through
//! either the `tau` parameter (`z = tau (1 - 2 tau)`) or the `t` parameter
//! (`z = t / (1 + 2t)^2`). Trivariate series count by vertices, hyperedges
//! and faces (`x`, `y`, `u`) through the parameters `p, q, r` with
//! `x = p(1-q-r)`, `u = q(1-p-r)`, `y = r(1-p-q)`, for genus 0 through 2.
//!
//! All arithmetic is exact over the rationals; integrality and
//! nonnegativity of the final coefficients are checked, not assumed.

mod data;
mod trivariate;
mod univariate;

pub use data::{GENUS2_PQR, TAU_NUMERATORS, T_NUMERATORS};
pub use trivariate::{Exponent, TSeries};
pub use univariate::USeries;

use crate::error::{Error, Result};

/// Highest genus with a univariate closed form.
pub const MAX_UNIVARIATE_GENUS: u32 = 6;
/// Highest genus with a trivariate closed form.
pub const MAX_TRIVARIATE_GENUS: u32 = 2;

/// Variable indices of [`TSeries`] in the trivariate generating function.
pub const X_VERTICES: usize = 0;
pub const Y_HYPEREDGES: usize = 1;
pub const U_FACES: usize = 2;

/// `tau(z)` with `tau(0) = 0` and `tau - 2 tau^2 = z`, to order `order`.
pub fn tau_of_z(order: usize) -> Result<USeries> {
    let z = USeries::var(order);
    USeries::fixed_point(order, "tau(z)", |tau| &z + &(tau * tau).scale_int(2))
}

/// `t(z)` with `t(0) = 0` and `z = t / (1 + 2t)^2`, to order `order`.
pub fn t_of_z(order: usize) -> Result<USeries> {
    let z = USeries::var(order);
    USeries::fixed_point(order, "t(z)", |t| &z * &t.affine(1, 2).pow(2))
}

fn check_univariate(genus: u32) -> Result<()> {
    if genus > MAX_UNIVARIATE_GENUS {
        return Err(Error::UnsupportedGenus {
            genus,
            what: "univariate closed form",
            max: MAX_UNIVARIATE_GENUS,
        });
    }
    Ok(())
}

fn validated(series: USeries, context: &str) -> Result<USeries> {
    series.to_naturals(context)?;
    Ok(series)
}

fn inverse(s: &USeries) -> USeries {
    s.inverse().expect("denominator has unit constant term")
}

/// Rooted hypermaps of genus `genus` counted by darts, from the
/// `tau`-parametric closed form, to order `order`.
pub fn hg_univariate(genus: u32, order: usize) -> Result<USeries> {
    check_univariate(genus)?;
    // Genus 0 divides by z^2, which costs two orders.
    let work = order + 2;
    let tau = tau_of_z(work)?;
    let tau3 = tau.pow(3);
    let one_minus_tau = tau.affine(1, -1);
    let one_minus_4tau = tau.affine(1, -4);
    let series = match genus {
        0 => (&tau3 * &tau.affine(1, -3)).div_z_pow(2)?,
        1 => &tau3 * &inverse(&(&one_minus_tau * &one_minus_4tau.pow(2))),
        g => {
            let numerator = USeries::eval_poly(TAU_NUMERATORS[(g - 2) as usize], &tau);
            let denominator = &one_minus_tau.pow(4 * g - 3) * &one_minus_4tau.pow(5 * g - 3);
            (&(&tau3 * &numerator) * &inverse(&denominator))
                .mul_z_pow(2 * g as usize - 2)
                .scale_int(4)
        }
    };
    validated(series.truncate(order), &format!("H_{genus}(z) via tau"))
}

/// The same generating function through the `t` parameter.
pub fn hg_via_t(genus: u32, order: usize) -> Result<USeries> {
    check_univariate(genus)?;
    let t = t_of_z(order)?;
    let one_plus_t = t.affine(1, 1);
    let one_minus_2t = t.affine(1, -2);
    let series = match genus {
        0 => &t * &t.affine(1, -1),
        1 => &t.pow(3) * &inverse(&(&one_plus_t * &one_minus_2t.pow(2))),
        g => {
            let numerator = USeries::eval_poly(T_NUMERATORS[(g - 2) as usize], &t);
            let denominator = &one_plus_t.pow(4 * g - 3) * &one_minus_2t.pow(5 * g - 3);
            let prefactor = &t.pow(2 * g + 1) * &t.affine(1, 2);
            (&(&prefactor * &numerator) * &inverse(&denominator)).scale_int(4)
        }
    };
    validated(series, &format!("H_{genus}(z) via t"))
}

/// Solves `x = p(1-q-r)`, `u = q(1-p-r)`, `y = r(1-p-q)` for `(p, q, r)` as
/// series in `(x, y, u)` with zero constant terms, to total degree `order`.
pub fn pqr_of_xyu(order: u32) -> Result<(TSeries, TSeries, TSeries)> {
    let x = TSeries::var(X_VERTICES, order);
    let y = TSeries::var(Y_HYPEREDGES, order);
    let u = TSeries::var(U_FACES, order);
    let solve = |target: &TSeries, a: &TSeries, b: &TSeries| -> TSeries {
        let denominator = (a + b).affine(1, -1);
        target * &denominator.inverse().expect("unit constant term")
    };
    let (mut p, mut q, mut r) = (TSeries::zero(order), TSeries::zero(order), TSeries::zero(order));
    let rounds = order as usize + 2;
    for _ in 0..rounds {
        let np = solve(&x, &q, &r);
        let nq = solve(&u, &p, &r);
        let nr = solve(&y, &p, &q);
        if np == p && nq == q && nr == r {
            return Ok((p, q, r));
        }
        (p, q, r) = (np, nq, nr);
    }
    Err(Error::NoConvergence {
        context: "p, q, r as series in x, y, u".to_string(),
        rounds,
    })
}

/// Rooted hypermaps of genus `genus` by vertices (`x`), hyperedges (`y`)
/// and faces (`u`), to total degree `order`. The empty hypermap is not
/// included, so genus 0 has no constant term.
pub fn hg_trivariate(genus: u32, order: u32) -> Result<TSeries> {
    if genus > MAX_TRIVARIATE_GENUS {
        return Err(Error::UnsupportedGenus {
            genus,
            what: "trivariate closed form",
            max: MAX_TRIVARIATE_GENUS,
        });
    }
    let (p, q, r) = pqr_of_xyu(order)?;
    let pqr = &(&p * &q) * &r;
    let sum = &(&p + &q) + &r;
    let series = if genus == 0 {
        &pqr * &sum.affine(1, -1)
    } else {
        let base = &(&(&pqr * &p.affine(1, -1)) * &q.affine(1, -1)) * &r.affine(1, -1);
        let discriminant = &sum.affine(1, -1).pow(2) - &pqr.scale_int(4);
        let inv = discriminant.inverse().expect("unit constant term");
        if genus == 1 {
            &base * &inv.pow(2)
        } else {
            let numerator = TSeries::eval_poly(GENUS2_PQR, &p, &q, &r);
            &(&base * &numerator) * &inv.pow(7)
        }
    };
    series.to_naturals(&format!("H_{genus}(x, y, u)"))?;
    Ok(series)
}

/// Coefficients of a trivariate series as a count table for `genus`, with
/// the dart count recovered from the genus formula.
pub fn trivariate_table(genus: u32, series: &TSeries) -> Result<crate::model::CountTable> {
    use crate::model::{CountTable, EngineId, HypermapKey, TableMeta};
    let max_darts = (series.order() + 2 * genus).saturating_sub(2);
    let mut table = CountTable::new(TableMeta {
        engine: EngineId::Series,
        max_genus: genus,
        max_darts,
    });
    for (e, count) in series.to_naturals("trivariate table")? {
        let [v, h, f] = e;
        let darts = (v + h + f + 2 * genus).saturating_sub(2);
        table.insert(HypermapKey::new(genus, darts, v, h, f)?, count)?;
    }
    Ok(table)
}
