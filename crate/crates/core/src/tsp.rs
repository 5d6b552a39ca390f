//! Tour construction over point sets, used on the lifted `2d`-dimensional
//! request points.
//!
//! `MstDouble` is the general-dimension workhorse (2-approximation in any
//! Euclidean dimension). `Strip` is the serpentine sweep for 2-dimensional
//! point sets; with `ceil(sqrt(n/2))` strips its tours stay within the
//! `sqrt(2n) + 7/4` unit-square envelope that the analysis leans on.
//! `NnTwoOpt` is nearest-neighbor plus 2-opt polish.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{dist, Point};
use crate::scalar::Scalar;

/// A cyclic visiting order over a point set (0-based indices; the successor
/// of the last entry is the first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    pub order: Vec<usize>,
}

impl Tour {
    pub fn new(order: Vec<usize>) -> Self {
        Tour { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True iff `order` is a permutation of `0..n`.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.order.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &i in &self.order {
            if i >= n || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// Tour construction strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TspBackend {
    /// Boustrophedon strip sweep; 2-dimensional points only.
    Strip,
    /// Prim MST, preorder walk, duplicate shortcutting.
    MstDouble,
    /// Nearest neighbor from a seeded start, then up to `max_passes` rounds
    /// of 2-opt.
    NnTwoOpt { max_passes: usize },
}

impl std::fmt::Display for TspBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TspBackend::Strip => write!(f, "strip"),
            TspBackend::MstDouble => write!(f, "mst"),
            TspBackend::NnTwoOpt { .. } => write!(f, "nn2opt"),
        }
    }
}

/// Builds a tour over `points`. Deterministic for a fixed
/// `(points, backend, seed)` triple; only `NnTwoOpt` consumes the seed.
pub fn build_tour<S: Scalar>(points: &[Point<S>], backend: TspBackend, seed: u64) -> Result<Tour> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    match backend {
        TspBackend::Strip => strip_tour(points),
        TspBackend::MstDouble => Ok(mst_double_tour(points)),
        TspBackend::NnTwoOpt { max_passes } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let start = rng.random_range(0..points.len());
            let tour = nearest_neighbor_tour(points, start);
            Ok(two_opt(points, &tour, max_passes))
        }
    }
}

/// Sum of consecutive distances including the closing edge.
pub fn tour_length<S: Scalar>(points: &[Point<S>], tour: &Tour) -> S {
    let n = tour.order.len();
    let mut acc = S::zero();
    for i in 0..n {
        let a = &points[tour.order[i]];
        let b = &points[tour.order[(i + 1) % n]];
        acc += dist(a, b);
    }
    acc
}

fn strip_tour<S: Scalar>(points: &[Point<S>]) -> Result<Tour> {
    let d = points[0].dim();
    if d != 2 {
        return Err(Error::StripDimension(d));
    }
    let n = points.len();
    let strips = (n as f64 / 2.0).sqrt().ceil().max(1.0) as usize;

    let strip_of = |p: &Point<S>| -> usize {
        let x = p[0].to_f64().unwrap_or(0.0);
        ((x * strips as f64).floor() as isize).clamp(0, strips as isize - 1) as usize
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (sa, sb) = (strip_of(&points[a]), strip_of(&points[b]));
        sa.cmp(&sb)
            .then_with(|| {
                let (ya, yb) = (points[a][1], points[b][1]);
                let cmp = ya.partial_cmp(&yb).expect("finite coordinates");
                if sa % 2 == 0 {
                    cmp
                } else {
                    cmp.reverse()
                }
            })
            .then(a.cmp(&b))
    });
    Ok(Tour::new(order))
}

fn mst_double_tour<S: Scalar>(points: &[Point<S>]) -> Tour {
    let n = points.len();
    if n == 1 {
        return Tour::new(vec![0]);
    }

    // Prim from point 0; ties break toward the lowest index because the
    // scan only replaces on strict improvement.
    let mut in_tree = vec![false; n];
    let mut key = vec![S::infinity(); n];
    let mut parent = vec![0usize; n];
    key[0] = S::zero();
    for _ in 0..n {
        let mut u = usize::MAX;
        let mut best = S::infinity();
        for v in 0..n {
            if !in_tree[v] && key[v] < best {
                best = key[v];
                u = v;
            }
        }
        in_tree[u] = true;
        for v in 0..n {
            if !in_tree[v] {
                let w = dist(&points[u], &points[v]);
                if w < key[v] {
                    key[v] = w;
                    parent[v] = u;
                }
            }
        }
    }

    // Children end up index-sorted; the preorder walk is the shortcut tour.
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..n {
        children[parent[v]].push(v);
    }
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        order.push(u);
        for &c in children[u].iter().rev() {
            stack.push(c);
        }
    }
    Tour::new(order)
}

fn nearest_neighbor_tour<S: Scalar>(points: &[Point<S>], start: usize) -> Tour {
    let n = points.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut here = start;
    visited[here] = true;
    order.push(here);
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut best = S::infinity();
        for v in 0..n {
            if !visited[v] {
                let w = dist(&points[here], &points[v]);
                if w < best {
                    best = w;
                    next = v;
                }
            }
        }
        visited[next] = true;
        order.push(next);
        here = next;
    }
    Tour::new(order)
}

/// First-improvement 2-opt sweeps over the cyclic tour. Each pass scans all
/// exchanges and applies improving ones in place; stops after a pass with
/// no improvement or after `max_passes`. Never lengthens the tour;
/// `max_passes == 0` returns the input verbatim.
pub fn two_opt<S: Scalar>(points: &[Point<S>], tour: &Tour, max_passes: usize) -> Tour {
    let mut order = tour.order.clone();
    let n = order.len();
    if n < 4 {
        return Tour::new(order);
    }
    let eps = S::from_f64_lossy(1e-12);

    for _ in 0..max_passes {
        let mut improved = false;
        for i in 0..n - 1 {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue; // same pair of edges
                }
                let a = &points[order[i]];
                let b = &points[order[i + 1]];
                let c = &points[order[j]];
                let e = &points[order[(j + 1) % n]];
                let delta = dist(a, c) + dist(b, e) - dist(a, b) - dist(c, e);
                if delta < -eps {
                    order[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Tour::new(order)
}
