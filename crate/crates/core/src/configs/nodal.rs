//! Rational nodal curves over `F_p` and the node sets they carry.
//!
//! A curve is the image of three random binary forms of degree `d`. Its
//! equation is the unique degree-`d` form through more than `d^2` image
//! points (two such forms would share a component by Bezout). Attempts whose
//! nodes are not all `F_p`-rational are discarded.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::attempt_rng;
use crate::algebra::modular::{add_mod, is_prime, mul_mod};
use crate::algebra::{Field, HomoPoly, Order, ProjectivePoint, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{plane_points, singular_points_over_fp, zeros_over_fp};
use crate::linsys::{system_dim, DimOptions, FatPointScheme};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodalCurve {
    pub curve: HomoPoly,
    /// The `(d-1)(d-2)/2` nodes, sorted.
    pub nodes: Vec<ProjectivePoint>,
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodalUnion {
    pub curves: [HomoPoly; 2],
    /// Nodes of both curves and their intersection points, sorted.
    pub points: Vec<ProjectivePoint>,
    pub attempts: u32,
}

struct Parametrized {
    curve: HomoPoly,
    image: Vec<ProjectivePoint>,
    nodes: Vec<ProjectivePoint>,
}

fn max_nodes(d: u32) -> usize {
    ((d - 1) * (d - 2) / 2) as usize
}

fn check_prime(p: u64, above: u64) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= above {
        return Err(Error::CharacteristicTooSmall { p, needed: above + 1 });
    }
    Field::prime(p)
}

/// Exact node check: the singular points have multiplicity exactly 2.
fn all_double(f: &HomoPoly, pts: &[ProjectivePoint]) -> Result<bool> {
    for p in pts {
        if f.order_of_vanishing(p)? != Order::Finite(2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Forms of degree `d` through the points with the given multiplicities.
fn forms_through(field: Field, points: Vec<ProjectivePoint>, mults: Vec<u32>, d: u32) -> Result<Vec<HomoPoly>> {
    let scheme = FatPointScheme::new(field, points, mults)?;
    let rep = system_dim(&scheme, d, &DimOptions::exact())?;
    Ok(rep.kernel_basis.unwrap_or_default())
}

fn parametrized_curve(d: u32, field: Field, rng: &mut ChaCha8Rng) -> Result<Option<Parametrized>> {
    let p = field.characteristic();
    let forms: Vec<Vec<u64>> = (0..3).map(|_| (0..=d).map(|_| rng.gen_range(0..p)).collect()).collect();
    let eval = |c: &[u64], s: u64, t: u64| -> u64 {
        // sum c_k s^k t^(d-k)
        (0..=d as usize).fold(0, |acc, k| {
            let mut m = c[k];
            for _ in 0..k {
                m = mul_mod(m, s, p);
            }
            for _ in k..d as usize {
                m = mul_mod(m, t, p);
            }
            add_mod(acc, m, p)
        })
    };
    let mut image = BTreeSet::new();
    for (s, t) in (0..p).map(|s| (s, 1)).chain(std::iter::once((1, 0))) {
        let v = [0, 1, 2].map(|i| eval(&forms[i], s, t) as i64);
        match ProjectivePoint::from_ints(field, v) {
            Ok(pt) => {
                image.insert(pt);
            }
            // a base point lowers the degree of the image
            Err(_) => return Ok(None),
        }
    }
    if image.len() as u64 <= u64::from(d * d) {
        return Ok(None);
    }
    let image: Vec<ProjectivePoint> = image.into_iter().collect();
    let mut basis = forms_through(field, image.clone(), vec![1; image.len()], d)?;
    if basis.len() != 1 {
        return Ok(None);
    }
    let curve = basis.pop().expect("one form");
    let nodes = singular_points_over_fp(&curve)?;
    if nodes.len() != max_nodes(d) || !all_double(&curve, &nodes)? {
        return Ok(None);
    }
    Ok(Some(Parametrized { curve, image, nodes }))
}

/// A rational curve of degree `d >= 3` over `F_p` with all of its
/// `(d-1)(d-2)/2` nodes rational. Needs `p > d^2`.
pub fn rational_nodal_nodes(d: u32, p: u64, seed: u64, max_retries: u32) -> Result<Option<NodalCurve>> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("nodal curves need d >= 3, got {d}")));
    }
    let field = check_prime(p, u64::from(d * d))?;
    for attempt in 0..max_retries {
        let mut rng = attempt_rng(seed, u64::from(attempt));
        if let Some(c) = parametrized_curve(d, field, &mut rng)? {
            return Ok(Some(NodalCurve {
                curve: c.curve,
                nodes: c.nodes,
                attempts: attempt + 1,
            }));
        }
    }
    Ok(None)
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_i64(field, rng.gen_range(0..field.characteristic()) as i64)
}

/// Two rational nodal curves of degrees `d1, d2 >= 2` meeting transversally
/// in rational points, with `Z` = both node sets plus the intersections.
///
/// The lower-degree curve comes from a parametrization. The other is
/// interpolated through `d1 d2` of its points and through prescribed nodes,
/// which pins it down when `3 (d-1)(d-2)/2 + d1 d2` does not exceed the
/// number of degree-`d` conditions; larger cases rarely succeed.
/// Transversality is confirmed by the singular set of the product.
pub fn two_nodal_union(d1: u32, d2: u32, p: u64, seed: u64, max_retries: u32) -> Result<Option<NodalUnion>> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::InvalidParameter(format!(
            "both degrees must be at least 2, got {d1} and {d2}"
        )));
    }
    let (lo, hi) = (d1.min(d2), d1.max(d2));
    let field = check_prime(p, u64::from((hi * hi).max(d1 + d2)))?;
    let all_points = plane_points(p)?;
    for attempt in 0..max_retries {
        let mut rng = attempt_rng(seed, u64::from(attempt));
        let Some(c1) = parametrized_curve(lo, field, &mut rng)? else {
            continue;
        };
        let mut smooth: Vec<ProjectivePoint> =
            c1.image.iter().filter(|q| !c1.nodes.contains(q)).cloned().collect();
        let meet = (lo * hi) as usize;
        if smooth.len() < meet {
            continue;
        }
        smooth.shuffle(&mut rng);
        let mut meets: Vec<ProjectivePoint> = smooth[..meet].to_vec();
        meets.sort();
        let off_curve: Vec<&ProjectivePoint> = all_points
            .iter()
            .filter(|q| !c1.curve.evaluate(q).map_or(true, |v| v.is_zero()))
            .collect();
        let mut nodes2: Vec<ProjectivePoint> = off_curve
            .choose_multiple(&mut rng, max_nodes(hi))
            .map(|q| (*q).clone())
            .collect();
        nodes2.sort();

        let mut points = meets.clone();
        points.extend(nodes2.iter().cloned());
        let mut mults = vec![1; meets.len()];
        mults.extend(std::iter::repeat_n(2, nodes2.len()));
        let basis = forms_through(field, points, mults, hi)?;
        if basis.is_empty() {
            continue;
        }
        let mut c2 = HomoPoly::zero(field, hi);
        for g in &basis {
            c2 = c2.add(&g.scale(&random_scalar(field, &mut rng)))?;
        }
        if c2.is_zero() {
            continue;
        }
        if singular_points_over_fp(&c2)? != nodes2 || !all_double(&c2, &nodes2)? {
            continue;
        }
        if zeros_over_fp(&[c1.curve.clone(), c2.clone()])? != meets {
            continue;
        }
        let mut expected: Vec<ProjectivePoint> = c1.nodes.clone();
        expected.extend(nodes2);
        expected.extend(meets);
        expected.sort();
        let product = c1.curve.mul(&c2)?;
        let sing = singular_points_over_fp(&product)?;
        if sing != expected || !all_double(&product, &sing)? {
            continue;
        }
        let curves = if d1 <= d2 { [c1.curve, c2] } else { [c2, c1.curve] };
        return Ok(Some(NodalUnion {
            curves,
            points: sing,
            attempts: attempt + 1,
        }));
    }
    Ok(None)
}
