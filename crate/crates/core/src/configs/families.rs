use std::collections::BTreeMap;

use rand::Rng;

use super::attempt_rng;
use crate::algebra::modular::{is_prime, primitive_cube_root};
use crate::algebra::{Field, ProjectivePoint, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{is_type9, Line};

/// Coordinate bound for random witnesses.
pub const DEFAULT_HEIGHT: i64 = 10_000;

/// `A, B, C` on `x = 0`, `y = 0`, `x + y = z`, then `D, E, F` one per side.
pub const TYPE9_DEFAULT: [[i64; 3]; 6] = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [0, 2, 1], [2, 0, 1], [3, -2, 1]];

const Q: Field = Field::Rational;
const MAX_DRAWS: usize = 1_000_000;

fn at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!("{what} must be at least {min}, got {n}")));
    }
    Ok(())
}

fn det(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i128 {
    let [a, b, c] = [a, b, c].map(|v| v.map(i128::from));
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn proportional(a: &[i64; 3], b: &[i64; 3]) -> bool {
    let [a, b] = [a, b].map(|v| v.map(i128::from));
    a[1] * b[2] == a[2] * b[1] && a[2] * b[0] == a[0] * b[2] && a[0] * b[1] == a[1] * b[0]
}

/// Integer triples in `[-h, h]`, pairwise non-proportional and no three
/// linearly dependent. Serves both points in general position and lines
/// with no three concurrent.
fn general_triples(n: usize, seed: u64, height: i64) -> Result<Vec<[i64; 3]>> {
    if height < 1 {
        return Err(Error::InvalidParameter("height must be positive".into()));
    }
    let mut rng = attempt_rng(seed, 0);
    let mut out: Vec<[i64; 3]> = Vec::with_capacity(n);
    let mut draws = 0;
    while out.len() < n {
        draws += 1;
        if draws > MAX_DRAWS {
            return Err(Error::InvalidParameter(format!(
                "could not place {n} points in general position with height {height}"
            )));
        }
        let v = [0; 3].map(|_| rng.gen_range(-height..=height));
        if v == [0, 0, 0] || out.iter().any(|w| proportional(w, &v)) {
            continue;
        }
        let dependent = (0..out.len()).any(|i| (i + 1..out.len()).any(|j| det(&out[i], &out[j], &v) == 0));
        if !dependent {
            out.push(v);
        }
    }
    Ok(out)
}

/// `(0 : i : 1)` for `i = 0..r`.
pub fn collinear(r: usize) -> Result<Vec<ProjectivePoint>> {
    at_least(r, 1, "r")?;
    (0..r as i64).map(|i| ProjectivePoint::from_ints(Q, [0, i, 1])).collect()
}

/// `(1 : t : t^2)` for `t = 0..r`, on `y^2 = x z`.
pub fn on_conic(r: usize) -> Result<Vec<ProjectivePoint>> {
    at_least(r, 1, "r")?;
    (0..r as i64).map(|t| ProjectivePoint::from_ints(Q, [1, t, t * t])).collect()
}

/// `r` seeded random points with coordinates in `[-height, height]`,
/// distinct and with no three collinear.
pub fn general(r: usize, seed: u64, height: i64) -> Result<Vec<ProjectivePoint>> {
    at_least(r, 1, "r")?;
    general_triples(r, seed, height)?
        .into_iter()
        .map(|v| ProjectivePoint::from_ints(Q, v))
        .collect()
}

pub fn nagata16(seed: u64) -> Result<Vec<ProjectivePoint>> {
    general(16, seed, DEFAULT_HEIGHT)
}

/// The `p(p-1)/2` pairwise intersections of `p` seeded lines with no three
/// concurrent, ordered by line pair `(i, j)`, `i < j`.
pub fn star(p: usize, seed: u64, height: i64) -> Result<(Vec<ProjectivePoint>, Vec<Line>)> {
    at_least(p, 3, "p")?;
    let lines = general_triples(p, seed, height)?
        .into_iter()
        .map(|v| Line::new(v.map(|c| Scalar::from_i64(Q, c))))
        .collect::<Result<Vec<_>>>()?;
    let mut points = Vec::with_capacity(p * (p - 1) / 2);
    for i in 0..p {
        for j in i + 1..p {
            points.push(lines[i].meet(&lines[j]).expect("distinct lines"));
        }
    }
    Ok((points, lines))
}

/// A star of `d` lines without the intersection of the first two.
pub fn star_minus_one(d: usize, seed: u64, height: i64) -> Result<Vec<ProjectivePoint>> {
    at_least(d, 3, "d")?;
    let (mut points, _) = star(d, seed, height)?;
    points.remove(0);
    Ok(points)
}

/// The 12 points lying on at least three of the lines `x - w^a y`,
/// `y - w^b z`, `x - w^c z` over `F_p`, `w` a primitive cube root of unity.
pub fn dual_hesse(p: u64) -> Result<(Vec<ProjectivePoint>, Vec<Line>)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 3 != 1 || p <= 10 {
        return Err(Error::InvalidParameter(format!(
            "the dual Hesse configuration needs a prime p > 10 with p = 1 mod 3, got {p}"
        )));
    }
    let field = Field::prime(p)?;
    let w = primitive_cube_root(p).expect("p = 1 mod 3");
    let s = |n: i64| Scalar::from_i64(field, n);
    let root = |a: u32| Scalar::from_i64(field, w as i64).pow(a);
    let mut lines = Vec::with_capacity(9);
    for a in 0..3 {
        lines.push(Line::new([s(1), -root(a), s(0)])?);
    }
    for b in 0..3 {
        lines.push(Line::new([s(0), s(1), -root(b)])?);
    }
    for c in 0..3 {
        lines.push(Line::new([s(1), s(0), -root(c)])?);
    }
    let mut count: BTreeMap<ProjectivePoint, usize> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let pt = lines[i].meet(&lines[j]).expect("distinct lines");
            count.entry(pt).or_insert_with_key(|pt| lines.iter().filter(|l| l.contains(pt)).count());
        }
    }
    let points = count.into_iter().filter(|(_, c)| *c >= 3).map(|(pt, _)| pt).collect();
    Ok((points, lines))
}

/// Triangle vertices plus one extra point per side. `None` gives the fixed
/// instance [`TYPE9_DEFAULT`]; a seed draws the extra points at random.
pub fn type9(seed: Option<u64>) -> Result<Vec<ProjectivePoint>> {
    let ints = |rows: &[[i64; 3]]| -> Result<Vec<ProjectivePoint>> {
        rows.iter().map(|c| ProjectivePoint::from_ints(Q, *c)).collect()
    };
    let Some(seed) = seed else {
        return ints(&TYPE9_DEFAULT);
    };
    for attempt in 0.. {
        let mut rng = attempt_rng(seed, attempt);
        let mut pick = || loop {
            let v = rng.gen_range(-9i64..=9);
            if v != 0 && v != 1 {
                break v;
            }
        };
        let (d, e, f) = (pick(), pick(), pick());
        let pts = ints(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [0, d, 1], [e, 0, 1], [f, 1 - f, 1]])?;
        if is_type9(&pts)? {
            return Ok(pts);
        }
    }
    unreachable!("attempt counter is unbounded")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{are_collinear, common_conic, is_star_configuration};

    #[test]
    fn general_points_avoid_collinear_triples() {
        let pts = general(8, 5, 3).unwrap();
        for i in 0..8 {
            for j in i + 1..8 {
                for k in j + 1..8 {
                    let triple = [pts[i].clone(), pts[j].clone(), pts[k].clone()];
                    assert!(are_collinear(&triple).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn general_gives_up_when_impossible() {
        // coordinates in {-1, 0, 1} give only 13 projective points
        assert!(general(40, 0, 1).is_err());
    }

    #[test]
    fn star_points_lie_on_two_lines_each() {
        let (pts, lines) = star(5, 2, 50).unwrap();
        assert_eq!(pts.len(), 10);
        for p in &pts {
            assert_eq!(lines.iter().filter(|l| l.contains(p)).count(), 2);
        }
        assert_eq!(is_star_configuration(&pts).unwrap().unwrap().0, 5);
    }

    #[test]
    fn star_minus_one_drops_first_pair() {
        let (pts, lines) = star(4, 9, DEFAULT_HEIGHT).unwrap();
        let minus = star_minus_one(4, 9, DEFAULT_HEIGHT).unwrap();
        assert_eq!(minus.len(), 5);
        assert!(!minus.contains(&lines[0].meet(&lines[1]).unwrap()));
        assert_eq!(&pts[1..], &minus[..]);
    }

    #[test]
    fn dual_hesse_incidences() {
        for p in [13, 31] {
            let (pts, lines) = dual_hesse(p).unwrap();
            assert_eq!((pts.len(), lines.len()), (12, 9));
            for pt in &pts {
                assert_eq!(lines.iter().filter(|l| l.contains(pt)).count(), 3);
            }
            for l in &lines {
                assert_eq!(pts.iter().filter(|pt| l.contains(pt)).count(), 4);
            }
        }
        assert!(dual_hesse(11).is_err());
        assert!(dual_hesse(7).is_err());
    }

    #[test]
    fn type9_instances() {
        let canonical = type9(None).unwrap();
        assert!(is_type9(&canonical).unwrap());
        assert!(common_conic(&canonical).unwrap().is_none());
        for seed in 0..5 {
            assert!(is_type9(&type9(Some(seed)).unwrap()).unwrap());
        }
    }

    #[test]
    fn simple_families() {
        assert_eq!(collinear(1).unwrap().len(), 1);
        assert!(are_collinear(&collinear(3).unwrap()).unwrap().is_some());
        assert!(common_conic(&on_conic(5).unwrap()).unwrap().is_some());
        assert!(are_collinear(&on_conic(2).unwrap()).unwrap().is_some());
        assert!(collinear(0).is_err());
    }
}
