//! Graph homomorphisms: the explicit map `M_k(SG(n-1,k)) -> SG(n,k)`,
//! lifting through the generalized Mycielskian, composition and
//! edge-by-edge verification.

use super::families::{cycle, mycielskian, schrijver};
use super::Graph;
use crate::label::Label;
use crate::report::{ValidationReport, ViolationCode};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: Graph,
    pub target: Graph,
    /// Target vertex index for each source vertex index.
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn from_fn(
        source: Graph,
        target: Graph,
        mut f: impl FnMut(&Label) -> Result<Label>,
    ) -> Result<Self> {
        let map = source
            .labels()
            .iter()
            .map(|l| {
                let img = f(l)?;
                target
                    .index_of(&img)
                    .ok_or_else(|| Error::UnknownLabel(format!("image {img} of {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source,
            target,
            map,
        })
    }

    /// Builds a map from `(source label, target label)` pairs; every source
    /// vertex must appear exactly once.
    pub fn from_pairs(source: Graph, target: Graph, pairs: &[(Label, Label)]) -> Result<Self> {
        let mut map = vec![usize::MAX; source.n()];
        for (s, t) in pairs {
            let si = source
                .index_of(s)
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))?;
            let ti = target
                .index_of(t)
                .ok_or_else(|| Error::UnknownLabel(t.to_string()))?;
            if map[si] != usize::MAX {
                return Err(Error::Parse(format!("source vertex {s} mapped twice")));
            }
            map[si] = ti;
        }
        if let Some(v) = map.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Parse(format!(
                "source vertex {} has no image",
                source.label(v)
            )));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn image_label(&self, l: &Label) -> Option<&Label> {
        self.source
            .index_of(l)
            .map(|v| self.target.label(self.map[v]))
    }

    pub fn pairs(&self) -> Vec<(Label, Label)> {
        self.map
            .iter()
            .enumerate()
            .map(|(s, &t)| (self.source.label(s).clone(), self.target.label(t).clone()))
            .collect()
    }

    /// `next ∘ self`; the target of `self` and source of `next` must carry the
    /// same labels.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        let map = self
            .map
            .iter()
            .map(|&t| {
                let l = self.target.label(t);
                next.source
                    .index_of(l)
                    .map(|s| next.map[s])
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map,
        })
    }
}

/// Every source edge must map onto a target edge.
pub fn verify_homomorphism(f: &Homomorphism) -> ValidationReport {
    let mut r = ValidationReport::new();
    for (a, b) in f.source.edges() {
        let (fa, fb) = (f.map[a], f.map[b]);
        let (la, lb) = (f.source.label(a), f.source.label(b));
        if fa == fb {
            r.global(
                ViolationCode::NotAHomomorphism,
                format!("edge {la}-{lb} collapses onto {}", f.target.label(fa)),
            );
        } else if !f.target.has_edge(fa, fb) {
            r.global(
                ViolationCode::NotAHomomorphism,
                format!(
                    "edge {la}-{lb} maps to non-edge {}-{}",
                    f.target.label(fa),
                    f.target.label(fb)
                ),
            );
        }
    }
    r
}

/// The map of a vertex of `M_k(SG(n-1,k))` into `SG(n,k)`.
fn schrijver_image(n: u32, k: u32, label: &Label) -> Result<Label> {
    let odd = |count: u32| (0..count).map(|t| 2 * t + 1);
    let even = |count: u32| (1..=count).map(|t| 2 * t);
    match label {
        Label::Apex => {
            let set: Vec<u32> = if k % 2 == 0 {
                odd(k / 2)
                    .chain((0..k / 2).map(|t| n - k + 1 + 2 * t))
                    .collect()
            } else {
                // {2, 4, .., k-1} ∪ {n-k+1, n-k+3, .., n-2} ∪ {n}
                even((k - 1) / 2)
                    .chain((0..(k - 1) / 2).map(|t| n - k + 1 + 2 * t))
                    .chain([n])
                    .collect()
            };
            Ok(Label::subset(set))
        }
        Label::Level(base, level) => {
            let a = base
                .as_subset()
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            let level = *level;
            if a.len() != k as usize || level < 1 || level > k {
                return Err(Error::UnknownLabel(label.to_string()));
            }
            // a[j - 1] is a_j
            let offset = k - level;
            let set: Vec<u32> = if offset % 2 == 0 {
                let i = offset / 2;
                odd(i)
                    .chain(a[i as usize..(k - i) as usize].iter().copied())
                    .chain((0..i).map(|t| n - 2 * i + 1 + 2 * t))
                    .collect()
            } else {
                let i = (offset - 1) / 2;
                let middle = if a[0] > 1 {
                    &a[i as usize..(k - i - 1) as usize]
                } else {
                    &a[(i + 1) as usize..(k - i) as usize]
                };
                even(i)
                    .chain(middle.iter().copied())
                    .chain((0..=i).map(|t| n - 2 * i + 2 * t))
                    .collect()
            };
            Ok(Label::subset(set))
        }
        _ => Err(Error::UnknownLabel(label.to_string())),
    }
}

/// The explicit homomorphism `M_k(SG(n-1, k)) -> SG(n, k)`, verified before
/// it is returned.
pub fn schrijver_homomorphism(n: u32, k: u32) -> Result<Homomorphism> {
    if k < 1 || n <= 2 * k + 1 {
        return Err(Error::BadParameter(format!(
            "need k >= 1 and n > 2k+1, got n={n}, k={k}"
        )));
    }
    let source = mycielskian(&schrijver(n - 1, k)?, k)?;
    let target = schrijver(n, k)?;
    let f = Homomorphism::from_fn(source, target, |l| schrijver_image(n, k, l))?;
    verify_homomorphism(&f).into_result("schrijver_homomorphism")?;
    Ok(f)
}

/// `(v, i) -> (f(v), i)`, `z -> z`: a homomorphism `M_r(G) -> M_r(H)`.
pub fn lift_homomorphism(f: &Homomorphism, r: u32) -> Result<Homomorphism> {
    let source = mycielskian(&f.source, r)?;
    let target = mycielskian(&f.target, r)?;
    let lifted = Homomorphism::from_fn(source, target, |l| match l {
        Label::Apex => Ok(Label::Apex),
        Label::Level(base, i) => f
            .image_label(base)
            .map(|img| Label::level(img.clone(), *i))
            .ok_or_else(|| Error::UnknownLabel(l.to_string())),
        _ => Err(Error::UnknownLabel(l.to_string())),
    })?;
    verify_homomorphism(&lifted).into_result("lift_homomorphism")?;
    Ok(lifted)
}

/// The isomorphism `C_{2k+1} -> SG(2k+1, k)` obtained by walking around the
/// Schrijver graph from its lexicographically first vertex.
pub fn odd_cycle_onto_schrijver(k: u32) -> Result<Homomorphism> {
    let n = 2 * k + 1;
    let target = schrijver(n, k)?;
    let source = cycle(n as usize)?;
    let mut walk = vec![0usize];
    let mut prev = usize::MAX;
    while walk.len() < n as usize {
        let cur = *walk.last().unwrap();
        let next = target
            .neighbours(cur)
            .find(|&w| w != prev && !walk.contains(&w))
            .ok_or_else(|| {
                Error::verification("odd_cycle_onto_schrijver", ValidationReport::new())
            })?;
        prev = cur;
        walk.push(next);
    }
    let map = walk;
    let f = Homomorphism {
        source,
        target,
        map,
    };
    verify_homomorphism(&f).into_result("odd_cycle_onto_schrijver")?;
    Ok(f)
}
