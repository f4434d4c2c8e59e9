//! Closures of quasi-components and removal of redundant components.
//!
//! The closure of `W(R)` is `W(R)` together with its limit points, so a
//! closure is *described* by the pair (chain, limit set). That
//! description powers two predicates: membership of a point in the
//! quasi-component itself, and inclusion between components of a
//! triangular decomposition — which is what lets redundant components be
//! removed.

use crate::chain::{
    eval_at_point, limit_points, solve_zero_dim, ChainError, LimitConfig, LimitPoint,
    RegularChain,
};
use crate::elim::prem;
use crate::tower::{SplitResult, Tower};

/// A quasi-component together with its finitely many limit points: the
/// Zariski closure of `W(chain)`.
#[derive(Debug, Clone)]
pub struct ClosureDescription {
    pub chain: RegularChain,
    pub limit_set: Vec<LimitPoint>,
}

/// Describe the closure of `W(R)`. One-dimensional chains get their limit
/// points computed; zero-dimensional quasi-components are already closed.
pub fn closure(chain: &RegularChain, cfg: &LimitConfig) -> Result<ClosureDescription, ChainError> {
    if chain.validate().is_valid() {
        let limit_set = limit_points(chain, cfg)?;
        return Ok(ClosureDescription { chain: chain.clone(), limit_set });
    }
    if chain.validate_zero_dim().is_valid() {
        return Ok(ClosureDescription { chain: chain.clone(), limit_set: Vec::new() });
    }
    let mut v = chain.validate().violations;
    v.extend(chain.validate_zero_dim().violations);
    Err(ChainError::Invalid(v))
}

/// Does the point lie in `W(R)` — all chain polynomials zero, `h_R`
/// nonzero? The answer may differ between conjugates of the point's
/// tower, so it is returned per branch.
pub fn point_in_quasi_component(
    z: &LimitPoint,
    chain: &RegularChain,
) -> SplitResult<bool> {
    let mut work: Vec<(Tower, usize)> = vec![(z.tower.clone(), 0)];
    let mut out: Vec<(Tower, bool)> = Vec::new();
    let polys = chain.polys();
    while let Some((t, i)) = work.pop() {
        let zb = LimitPoint {
            tower: t.clone(),
            coords: z.coords.iter().map(|c| t.transport(c)).collect(),
        };
        if i < polys.len() {
            let e = eval_at_point(&polys[i], &zb);
            for (bt, is_zero) in t.is_zero_split(&e).cases {
                if is_zero {
                    work.push((bt, i + 1));
                } else {
                    out.push((bt, false));
                }
            }
            continue;
        }
        // all polynomials vanish here; membership needs h_R nonzero
        let h = eval_at_point(&chain.h_r(), &zb);
        for (bt, is_zero) in t.is_zero_split(&h).cases {
            out.push((bt, !is_zero));
        }
    }
    out.sort_by(|a, b| a.0.render().cmp(&b.0.render()));
    SplitResult { cases: out }
}

/// Is `W(A)` contained in the closure of `W(B)`? Decided by
/// pseudo-reducing every polynomial of `B` through the ladder of `A`:
/// inclusion holds exactly when every pseudo-remainder vanishes.
///
/// When the chains have equal dimension this criterion is only valid if
/// the saturated ideal of `A` is radical, which this library cannot
/// check; the caller must assert it via `a_radical`, otherwise the call
/// is refused.
pub fn chain_inclusion(
    a: &RegularChain,
    b: &RegularChain,
    a_radical: bool,
) -> Result<bool, ChainError> {
    if a.vars().names() != b.vars().names() {
        return Err(ChainError::Invalid(vec![
            "inclusion needs both chains over the same ordered variables".into(),
        ]));
    }
    if a.dimension() == b.dimension() && !a_radical {
        return Err(ChainError::Invalid(vec![
            "equal-dimension inclusion is only certified for chains with a \
             radical saturated ideal; assert radicality to proceed"
                .into(),
        ]));
    }
    for p in b.polys() {
        let mut r = p.clone();
        for q in a.polys().iter().rev() {
            if r.is_zero() {
                break;
            }
            let mv = q.main_var().expect("chain polynomials are non-constant");
            r = prem(&r, q, mv).0;
        }
        if !r.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the (solved) point absorbed by the closure of `W(d)` — in the
/// quasi-component itself or among its limit points — on every branch of
/// its tower?
fn point_absorbed(z: &LimitPoint, d: &RegularChain, lim: &[LimitPoint]) -> bool {
    let keys: Vec<String> = lim.iter().map(point_key).collect();
    for (t, in_w) in point_in_quasi_component(z, d).cases {
        if in_w {
            continue;
        }
        let coords: Vec<_> = z.coords.iter().map(|c| t.transport(c)).collect();
        let (tower, coords) = t.pruned(&coords);
        let zb = LimitPoint { tower, coords };
        if !keys.contains(&point_key(&zb)) {
            return false;
        }
    }
    true
}

fn point_key(z: &LimitPoint) -> String {
    format!("{} | {}", z.render(), z.tower.render())
}

/// Remove the components of a triangular decomposition that are contained
/// in the closure of another one.
///
/// A component `C` is dropped when some other component `D` absorbs it:
/// either `C` is zero-dimensional, `D` one-dimensional, and every point
/// of `C` lies in `W(D)` or among its limit points; or the dimensions are
/// equal and [`chain_inclusion`] certifies `W(C)` inside the closure of
/// `W(D)`. Equal components keep their first occurrence. Equal-dimension
/// inclusion is only attempted when `assume_radical` asserts that all
/// saturated ideals are radical; otherwise such pairs are conservatively
/// kept.
pub fn remove_redundant(
    chains: &[RegularChain],
    assume_radical: bool,
    cfg: &LimitConfig,
) -> Result<Vec<RegularChain>, ChainError> {
    let n = chains.len();
    let mut dims = Vec::with_capacity(n);
    for c in chains {
        let d = c.dimension();
        let ok = match d {
            0 => c.validate_zero_dim().is_valid(),
            1 => c.validate().is_valid(),
            _ => false,
        };
        if !ok {
            return Err(ChainError::Invalid(vec![format!(
                "component {} is not a supported triangular system",
                dims.len() + 1
            )]));
        }
        dims.push(d);
    }
    // limit sets of one-dimensional components, computed at most once
    let mut lims: Vec<Option<Vec<LimitPoint>>> = vec![None; n];
    let mut lim_of = |j: usize, chains: &[RegularChain]| -> Result<Vec<LimitPoint>, ChainError> {
        if lims[j].is_none() {
            lims[j] = Some(limit_points(&chains[j], cfg)?);
        }
        Ok(lims[j].clone().unwrap())
    };
    // subsumes[j][i]: component j absorbs component i
    let mut subsumes = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            subsumes[j][i] = if dims[i] < dims[j] {
                let pts = solve_zero_dim(&chains[i])?;
                let lim = lim_of(j, chains)?;
                pts.iter().all(|z| point_absorbed(z, &chains[j], &lim))
            } else if dims[i] == dims[j] && assume_radical {
                chain_inclusion(&chains[i], &chains[j], true)?
            } else {
                false
            };
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        let dropped = (0..n).any(|j| {
            j != i && subsumes[j][i] && (j < i || !subsumes[i][j])
        });
        if !dropped {
            out.push(chains[i].clone());
        }
    }
    Ok(out)
}
