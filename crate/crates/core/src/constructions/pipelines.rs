use crate::graph::hom::odd_cycle_onto_schrijver;
use crate::graph::{lift_homomorphism, schrijver_homomorphism, Homomorphism};
use crate::{Error, Result};

use super::{
    cylinder_complete, default_precedence, mycielski_lift, odd_cycle_sphere, suspension,
    SymmetricSphere,
};

/// Lifts with `r` levels and doubles, `times` times.
fn lift_and_double(mut s: SymmetricSphere, r: usize, times: usize) -> Result<SymmetricSphere> {
    for _ in 0..times {
        let order = default_precedence(&s.graph()?);
        s = mycielski_lift(&s, r, &order)?.double()?;
    }
    Ok(s)
}

/// The Mycielski graph `M_n` as a quadrangulation of `P^{n−2}`: the
/// pentagon in `P^1` lifted `n−3` times with two levels.
pub fn mycielski_tower(n: usize) -> Result<SymmetricSphere> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "Mycielski graphs start at n = 3, got {n}"
        )));
    }
    lift_and_double(odd_cycle_sphere(2)?, 2, n - 3)
}

/// `M_k` applied `n−2k−1` times to `C_{2k+1}`, quadrangulating `P^{n−2k}`,
/// with a verified homomorphism into `SG(n, k)`.
pub fn schrijver_pipeline(n: usize, k: usize) -> Result<(SymmetricSphere, Homomorphism)> {
    if k == 0 || n <= 2 * k {
        return Err(Error::BadParameter(format!(
            "need k >= 1 and n > 2k, got n={n}, k={k}"
        )));
    }
    let mut s = odd_cycle_sphere(k)?;
    let mut h = odd_cycle_onto_schrijver(k as u32)?;
    for m in 2 * k + 2..=n {
        s = lift_and_double(s, k, 1)?;
        h = lift_homomorphism(&h, k as u32)?.then(&schrijver_homomorphism(m as u32, k as u32)?)?;
    }
    if !s.graph()?.same_labelled(&h.source) {
        return Err(Error::verification("schrijver_pipeline", {
            let mut r = crate::report::ValidationReport::new();
            r.global(
                crate::report::ViolationCode::GraphMismatch,
                "homomorphism source is not the identified graph",
            );
            r
        }));
    }
    Ok((s, h))
}

/// `K_t` as a quadrangulation of `P^n` for even `t − n`. For `t − n >= 6`
/// the doubled cylinder with `r = (t−n)/2` is suspended `n − 3` times; for
/// `t − n = 2` the triangle in `P^1` is lifted `n − 1` times with one
/// level. `t − n = 4` needs the cylinder with `r = 2`, which is attempted
/// and reported as unsupported if it fails its audits.
pub fn complete_graph_pipeline(t: usize, n: usize) -> Result<SymmetricSphere> {
    if t < n || (t - n) % 2 == 1 {
        return Err(Error::BadParameter(format!(
            "t − n must be even and non-negative, got t={t}, n={n}"
        )));
    }
    match t - n {
        0 => Err(Error::UnsupportedParameters(format!(
            "K_{t} has chromatic number {t} < n + 2 = {}",
            n + 2
        ))),
        2 if n >= 1 => {
            let s = lift_and_double(odd_cycle_sphere(1)?, 1, n - 1)?;
            Ok(relabel_complete(s))
        }
        d if n >= 3 => {
            let r = d / 2;
            let ball = match cylinder_complete(r) {
                Ok(b) => b,
                Err(Error::VerificationFailed { stage, report }) if r < 3 => {
                    return Err(Error::UnsupportedParameters(format!(
                        "cylinder with r = {r} fails the {stage} audit: {report}"
                    )))
                }
                Err(e) => return Err(e),
            };
            let mut s = ball.double()?;
            for _ in 3..n {
                s = suspension(&s)?;
            }
            Ok(s)
        }
        _ => Err(Error::BadParameter(format!(
            "K_{t} in P^{n} needs n >= 3 for t − n >= 4"
        ))),
    }
}

/// Renames the vertices of an iterated one-level lift of the triangle to
/// `0..t`: the triangle keeps `0, 1, 2` and each apex takes the next index.
fn relabel_complete(mut s: SymmetricSphere) -> SymmetricSphere {
    use crate::label::Label;
    fn flatten(l: &Label) -> u64 {
        match l {
            Label::Index(i) => *i,
            Label::Level(base, _) => flatten(base),
            Label::Apex => unreachable!("handled by depth"),
            Label::Subset(_) => unreachable!("triangle labels are indices"),
        }
    }
    // An apex wrapped in `d` levels was added `d` lifts before the last one.
    fn depth_of_apex(l: &Label) -> Option<u32> {
        match l {
            Label::Apex => Some(0),
            Label::Level(base, _) => depth_of_apex(base).map(|d| d + 1),
            _ => None,
        }
    }
    let lifts = s
        .labels
        .iter()
        .filter_map(depth_of_apex)
        .max()
        .map_or(0, |d| d + 1) as u64;
    s.labels = s
        .labels
        .iter()
        .map(|l| match depth_of_apex(l) {
            Some(d) => Label::Index(3 + lifts - 1 - d as u64),
            None => Label::Index(flatten(l)),
        })
        .collect();
    s
}
