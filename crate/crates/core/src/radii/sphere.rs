//! Certified maximization of `g(u) = λ_max(Σ u_k M_k)` over the unit sphere
//! `S^{d−1}` for Hermitian `M_k`.
//!
//! `g` is convex and positively homogeneous. For a spherical simplex with unit
//! vertices `v_i` every point is `p / |p|` with `p` in the flat simplex, and
//! `|p| ≥ h`, the distance from the origin to the affine hull of the vertices.
//! Hence `g ≤ max_i g(v_i) / h` on the cell (or `max_i g(v_i)` when that is
//! negative). Cells are refined best-first by longest-edge bisection until the
//! largest cell bound is within the target of the best witness value.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::linalg::{jacobi, ComplexMatrix, C64};

/// Evaluation of the pencil at one direction.
#[derive(Debug, Clone)]
pub(crate) struct Probe {
    /// `λ_max(Σ u_k M_k)`
    pub value: f64,
    /// `(x* M_k x)_k` for the top eigenvector `x`.
    pub point: Vec<f64>,
}

impl Probe {
    /// `|w(x)|`, a value actually attained by a unit vector.
    pub fn witness(&self) -> f64 {
        self.point.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Pencil {
    mats: Vec<ComplexMatrix>,
    margin: f64,
}

impl Pencil {
    pub fn new(mats: Vec<ComplexMatrix>) -> Self {
        let scale: f64 = mats.iter().map(|m| m.frobenius_norm()).sum();
        let n = mats.first().map_or(1, |m| m.dim()) as f64;
        Self {
            mats,
            margin: 1e-14 * n * scale.max(f64::MIN_POSITIVE),
        }
    }

    pub fn arity(&self) -> usize {
        self.mats.len()
    }

    /// Absolute allowance for eigensolver roundoff added to certified bounds.
    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn combine(&self, u: &[f64]) -> ComplexMatrix {
        let n = self.mats[0].dim();
        let mut s = ComplexMatrix::zeros(n);
        for (m, &c) in self.mats.iter().zip(u) {
            if c != 0.0 {
                s = &s + &m.scale_re(c);
            }
        }
        s
    }

    fn forms(&self, x: &[C64]) -> Vec<f64> {
        self.mats.iter().map(|m| m.quadratic_form(x).re).collect()
    }

    pub fn probe_max(&self, u: &[f64]) -> Probe {
        let e = jacobi(self.combine(u));
        let x = e.vectors.column(0);
        Probe {
            value: e.values[0],
            point: self.forms(&x),
        }
    }

    pub fn probe_min(&self, u: &[f64]) -> Probe {
        let e = jacobi(self.combine(u));
        let n = e.values.len();
        let x = e.vectors.column(n - 1);
        Probe {
            value: e.values[n - 1],
            point: self.forms(&x),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SweepSettings {
    /// Stop once the largest cell bound is within this of the best witness.
    pub target: f64,
    pub max_evals: usize,
    /// Number of arcs in the initial circle partition (d = 2 only).
    pub initial_arcs: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct SweepResult {
    pub lo: f64,
    pub hi: f64,
    pub evals: usize,
}

struct Cell {
    bound: f64,
    verts: Vec<usize>,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.bound.total_cmp(&other.bound) == Ordering::Equal
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound)
    }
}

struct Mesh<'p> {
    pencil: &'p Pencil,
    dirs: Vec<Vec<f64>>,
    values: Vec<f64>,
    midpoints: HashMap<(usize, usize), usize>,
    best: Option<Probe>,
    evals: usize,
}

impl<'p> Mesh<'p> {
    fn new(pencil: &'p Pencil) -> Self {
        Self {
            pencil,
            dirs: Vec::new(),
            values: Vec::new(),
            midpoints: HashMap::new(),
            best: None,
            evals: 0,
        }
    }

    fn lo(&self) -> f64 {
        self.best.as_ref().map_or(0.0, |p| p.witness())
    }

    fn consider(&mut self, probe: Probe) {
        if self
            .best
            .as_ref()
            .is_none_or(|b| probe.witness() > b.witness())
        {
            self.best = Some(probe);
        }
    }

    fn add_vertex(&mut self, u: Vec<f64>) -> usize {
        let probe = self.pencil.probe_max(&u);
        self.evals += 1;
        self.values.push(probe.value);
        self.dirs.push(u);
        self.consider(probe);
        self.dirs.len() - 1
    }

    fn midpoint(&mut self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&m) = self.midpoints.get(&key) {
            return m;
        }
        let mut u: Vec<f64> = self.dirs[a]
            .iter()
            .zip(&self.dirs[b])
            .map(|(x, y)| x + y)
            .collect();
        let n = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        u.iter_mut().for_each(|x| *x /= n);
        let m = self.add_vertex(u);
        self.midpoints.insert(key, m);
        m
    }

    fn cell(&self, verts: Vec<usize>) -> Cell {
        let top = verts
            .iter()
            .map(|&v| self.values[v])
            .fold(f64::NEG_INFINITY, f64::max);
        let bound = if top > 0.0 {
            let vs: Vec<&[f64]> = verts.iter().map(|&v| self.dirs[v].as_slice()).collect();
            top / hull_distance(&vs)
        } else {
            top
        };
        Cell { bound, verts }
    }

    /// Fixed-point ascent `u ← w(x)/|w(x)|`; each step can only raise the witness.
    fn polish(&mut self, steps: usize) {
        for _ in 0..steps {
            let Some(best) = self.best.clone() else {
                return;
            };
            let w = best.witness();
            if w <= 0.0 {
                return;
            }
            let u: Vec<f64> = best.point.iter().map(|x| x / w).collect();
            let probe = self.pencil.probe_max(&u);
            self.evals += 1;
            let gained = probe.witness() - w;
            self.consider(probe);
            if gained <= 1e-15 * w.max(1.0) {
                return;
            }
        }
    }
}

/// Distance from the origin to the affine hull of `d` linearly independent unit
/// vectors in `R^d`: the hull is `{x : n·x = 1}` with `V n = 1`.
fn hull_distance(vs: &[&[f64]]) -> f64 {
    let d = vs.len();
    let mut m: Vec<Vec<f64>> = vs
        .iter()
        .map(|v| {
            let mut row = v.to_vec();
            row.push(1.0);
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        let p = m[col][col];
        if p.abs() < 1e-300 {
            return 0.0;
        }
        for i in 0..d {
            if i != col {
                let f = m[i][col] / p;
                if f != 0.0 {
                    let pivot = m[col].clone();
                    for (x, p) in m[i][col..=d].iter_mut().zip(&pivot[col..=d]) {
                        *x -= f * p;
                    }
                }
            }
        }
    }
    let n2: f64 = (0..d).map(|i| (m[i][d] / m[i][i]).powi(2)).sum();
    1.0 / n2.sqrt()
}

fn initial_cells(mesh: &mut Mesh<'_>, d: usize, arcs: usize) -> Vec<Vec<usize>> {
    if d == 2 {
        let n = arcs.max(4);
        let ids: Vec<usize> = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                mesh.add_vertex(vec![t.cos(), t.sin()])
            })
            .collect();
        return (0..n).map(|k| vec![ids[k], ids[(k + 1) % n]]).collect();
    }
    // facets of the cross-polytope: one signed basis vector per coordinate
    let mut ids = vec![[0usize; 2]; d];
    for (i, slot) in ids.iter_mut().enumerate() {
        for (s, sign) in [1.0, -1.0].into_iter().enumerate() {
            let mut u = vec![0.0; d];
            u[i] = sign;
            slot[s] = mesh.add_vertex(u);
        }
    }
    (0..1usize << d)
        .map(|mask| (0..d).map(|i| ids[i][(mask >> i) & 1]).collect())
        .collect()
}

/// Maximizes `λ_max(Σ u_k M_k)` over `|u| = 1`, which equals `max_x |w(x)|`.
pub(crate) fn maximize(pencil: &Pencil, cfg: &SweepSettings) -> SweepResult {
    let d = pencil.arity();
    if d == 1 {
        // the sphere is {±1}
        let a = pencil.probe_max(&[1.0]);
        let b = pencil.probe_max(&[-1.0]);
        let hi = a.value.max(b.value).max(0.0) + pencil.margin();
        let best = if a.witness() >= b.witness() { a } else { b };
        return SweepResult {
            lo: best.witness(),
            hi: hi.max(best.witness()),
            evals: 2,
        };
    }
    let mut mesh = Mesh::new(pencil);
    let cells = initial_cells(&mut mesh, d, cfg.initial_arcs);
    let mut heap: BinaryHeap<Cell> = cells.into_iter().map(|c| mesh.cell(c)).collect();
    mesh.polish(40);
    let mut next_polish = 256;

    let hi = loop {
        let top = heap.peek().expect("partition is never empty").bound;
        let lo = mesh.lo();
        if top <= lo + cfg.target || mesh.evals >= cfg.max_evals {
            break top;
        }
        let cell = heap.pop().unwrap();
        let (i, j) = longest_edge(&mesh, &cell.verts);
        let m = mesh.midpoint(cell.verts[i], cell.verts[j]);
        let mut left = cell.verts.clone();
        left[i] = m;
        let mut right = cell.verts;
        right[j] = m;
        heap.push(mesh.cell(left));
        heap.push(mesh.cell(right));
        if mesh.evals >= next_polish {
            mesh.polish(10);
            next_polish *= 2;
        }
    };

    let lo = mesh.best.as_ref().expect("at least one probe").witness();
    SweepResult {
        lo,
        hi: hi.max(lo) + pencil.margin(),
        evals: mesh.evals,
    }
}

fn longest_edge(mesh: &Mesh<'_>, verts: &[usize]) -> (usize, usize) {
    let mut best = (0, 1);
    let mut min_dot = f64::INFINITY;
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            let dot: f64 = mesh.dirs[verts[i]]
                .iter()
                .zip(&mesh.dirs[verts[j]])
                .map(|(a, b)| a * b)
                .sum();
            if dot < min_dot {
                min_dot = dot;
                best = (i, j);
            }
        }
    }
    best
}
