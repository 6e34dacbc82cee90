//! Line arrangements whose multiple points are exactly a given set.
//!
//! Every line of such an arrangement meets the others only inside `Z`, and
//! for `r >= 2` each point of `Z` lies on at least two arrangement lines, so
//! every arrangement line passes through at least two points of `Z`. Lines
//! spanned by pairs of points therefore form a complete candidate set.

use serde::Serialize;

use super::common_field;
use super::line::Line;
use crate::algebra::ProjectivePoint;
use crate::error::{Error, Result};
use crate::linsys::check_distinct;

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementWitness {
    pub lines: Vec<Line>,
    /// `incidence[i]` lists the arrangement lines through point `i`.
    pub incidence: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementSearch {
    /// A smallest arrangement found.
    pub witness: Option<ArrangementWitness>,
    /// The search finished within budget, so the answer is definitive.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Lines through at least two of the points, with the indices they contain.
/// Sorted by line.
pub fn rich_lines(points: &[ProjectivePoint]) -> Result<Vec<(Line, Vec<usize>)>> {
    common_field(points)?;
    check_distinct(points)?;
    let mut lines: Vec<(Line, Vec<usize>)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let line = Line::through(&points[i], &points[j])?;
            if seen.insert(line.clone()) {
                let on = (0..points.len()).filter(|&k| line.contains(&points[k])).collect();
                lines.push((line, on));
            }
        }
    }
    lines.sort();
    Ok(lines)
}

struct Search {
    on: Vec<Vec<usize>>,
    through: Vec<Vec<usize>>,
    compatible: Vec<Vec<bool>>,
    cover: Vec<u32>,
    chosen: Vec<usize>,
    banned: Vec<bool>,
    best: Option<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn available(&self, line: usize) -> bool {
        !self.banned[line]
            && !self.chosen.contains(&line)
            && self.chosen.iter().all(|&c| self.compatible[c][line])
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let best_len = self.best.as_ref().map_or(usize::MAX, Vec::len);
        // point with a coverage deficit and the fewest options
        let mut pick: Option<(usize, Vec<usize>)> = None;
        let mut max_deficit = 0;
        for (p, &c) in self.cover.iter().enumerate() {
            if c >= 2 {
                continue;
            }
            let deficit = (2 - c) as usize;
            max_deficit = max_deficit.max(deficit);
            let options: Vec<usize> = self.through[p]
                .iter()
                .copied()
                .filter(|&l| self.available(l))
                .collect();
            if options.len() < deficit {
                return true;
            }
            if pick.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                pick = Some((p, options));
            }
        }
        let Some((_, options)) = pick else {
            if self.chosen.len() < best_len {
                let mut found = self.chosen.clone();
                found.sort_unstable();
                self.best = Some(found);
            }
            return true;
        };
        if self.chosen.len() + max_deficit >= best_len {
            return true;
        }
        let mut newly_banned = Vec::new();
        let mut finished = true;
        for line in options {
            if !self.available(line) {
                continue;
            }
            self.chosen.push(line);
            for &p in &self.on[line] {
                self.cover[p] += 1;
            }
            let ok = self.run();
            for &p in &self.on[line] {
                self.cover[p] -= 1;
            }
            self.chosen.pop();
            if !ok {
                finished = false;
                break;
            }
            // later branches never use this line, so no set is visited twice
            self.banned[line] = true;
            newly_banned.push(line);
        }
        for l in newly_banned {
            self.banned[l] = false;
        }
        finished
    }
}

/// A smallest set of lines whose pairwise intersections all lie in `Z` and
/// which passes through every point of `Z` at least twice.
pub fn detect_line_arrangement_with_budget(
    points: &[ProjectivePoint],
    node_budget: u64,
) -> Result<ArrangementSearch> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter(
            "an arrangement needs at least two points".into(),
        ));
    }
    let candidates = rich_lines(points)?;
    let n = candidates.len();
    let on: Vec<Vec<usize>> = candidates.iter().map(|(_, o)| o.clone()).collect();
    let mut through = vec![Vec::new(); points.len()];
    for (l, pts) in on.iter().enumerate() {
        for &p in pts {
            through[p].push(l);
        }
    }
    // distinct lines meet in one point; it lies in Z iff both contain it
    let compatible = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| a != b && on[a].iter().any(|p| on[b].contains(p)))
                .collect()
        })
        .collect();
    let mut search = Search {
        on,
        through,
        compatible,
        cover: vec![0; points.len()],
        chosen: Vec::new(),
        banned: vec![false; n],
        best: None,
        nodes: 0,
        budget: node_budget,
    };
    let exhaustive = search.run();
    let witness = search.best.map(|chosen| {
        let lines: Vec<Line> = chosen.iter().map(|&l| candidates[l].0.clone()).collect();
        let incidence = (0..points.len())
            .map(|p| {
                (0..lines.len())
                    .filter(|&i| candidates[chosen[i]].1.contains(&p))
                    .collect()
            })
            .collect();
        ArrangementWitness { lines, incidence }
    });
    Ok(ArrangementSearch {
        witness,
        exhaustive,
        nodes: search.nodes,
    })
}

pub fn detect_line_arrangement(points: &[ProjectivePoint]) -> Result<Option<ArrangementWitness>> {
    Ok(detect_line_arrangement_with_budget(points, DEFAULT_NODE_BUDGET)?.witness)
}

/// `Z` is the set of pairwise intersections of `p` lines in general
/// position, `|Z| = p(p-1)/2`.
pub fn is_star_configuration(points: &[ProjectivePoint]) -> Result<Option<(usize, Vec<Line>)>> {
    let r = points.len();
    if r < 3 {
        return Ok(None);
    }
    let Some(p) = (3..=r).find(|p| p * (p - 1) / 2 >= r).filter(|p| p * (p - 1) / 2 == r) else {
        return Ok(None);
    };
    let full: Vec<(Line, Vec<usize>)> = rich_lines(points)?
        .into_iter()
        .filter(|(_, on)| on.len() == p - 1)
        .collect();
    if full.len() < p {
        return Ok(None);
    }
    // each point on exactly two chosen lines makes the pairs and points
    // correspond one to one
    fn choose(full: &[(Line, Vec<usize>)], start: usize, left: usize, count: &mut [u32], picked: &mut Vec<usize>) -> bool {
        if left == 0 {
            return count.iter().all(|&c| c == 2);
        }
        for i in start..full.len() {
            if full[i].1.iter().any(|&q| count[q] >= 2) {
                continue;
            }
            full[i].1.iter().for_each(|&q| count[q] += 1);
            picked.push(i);
            if choose(full, i + 1, left - 1, count, picked) {
                return true;
            }
            picked.pop();
            full[i].1.iter().for_each(|&q| count[q] -= 1);
        }
        false
    }
    let mut count = vec![0; r];
    let mut picked = Vec::new();
    Ok(choose(&full, 0, p, &mut count, &mut picked)
        .then(|| (p, picked.iter().map(|&i| full[i].0.clone()).collect())))
}

/// Six points: the vertices of a triangle plus one further point on each
/// side, with no other three collinear.
pub fn is_type9(points: &[ProjectivePoint]) -> Result<bool> {
    if points.len() != 6 {
        return Ok(false);
    }
    let triples: Vec<(Line, Vec<usize>)> = rich_lines(points)?
        .into_iter()
        .filter(|(_, on)| on.len() >= 3)
        .collect();
    if triples.len() != 3 || triples.iter().any(|(_, on)| on.len() != 3) {
        return Ok(false);
    }
    let mut count = [0u32; 6];
    for (_, on) in &triples {
        on.iter().for_each(|&q| count[q] += 1);
    }
    let vertices = count.iter().filter(|&&c| c == 2).count();
    let extras = count.iter().filter(|&&c| c == 1).count();
    Ok(vertices == 3 && extras == 3)
}
