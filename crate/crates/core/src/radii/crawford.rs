//! Distance from the origin to the numerical range `W(B)`.
//!
//! Lower bounds come from separating half-planes: for a unit direction `u`,
//! `λ_min(u₁ Re B + u₂ Im B)` is the smallest projection of `W(B)` on `u`.
//! Upper bounds come from the convex hull of attained points `x*Bx`, which lies
//! inside `W(B)`. New directions point at the hull's nearest point to the origin.

use super::sphere::Pencil;

#[derive(Debug, Clone)]
pub(crate) struct DistanceResult {
    pub lo: f64,
    pub hi: f64,
    pub evals: usize,
}

pub(crate) fn distance_to_range(pencil: &Pencil, target: f64, max_iter: usize) -> DistanceResult {
    let mut points: Vec<[f64; 2]> = Vec::new();
    let mut lo: f64 = 0.0;
    let mut evals = 0;
    for k in 0..16 {
        let t = std::f64::consts::PI * k as f64 / 8.0;
        let u = [t.cos(), t.sin()];
        let low = pencil.probe_min(&u);
        let high = pencil.probe_max(&u);
        evals += 2;
        lo = lo.max(low.value);
        points.push([low.point[0], low.point[1]]);
        points.push([high.point[0], high.point[1]]);
    }
    let mut hi;
    let mut iter = 0;
    loop {
        let p = nearest_hull_point(&points);
        hi = (p[0] * p[0] + p[1] * p[1]).sqrt();
        if hi <= lo + target || hi == 0.0 || iter >= max_iter {
            break;
        }
        let u = [p[0] / hi, p[1] / hi];
        let low = pencil.probe_min(&u);
        evals += 1;
        iter += 1;
        lo = lo.max(low.value);
        points.push([low.point[0], low.point[1]]);
    }
    // the separating margin is a lower bound only up to eigensolver roundoff
    let lo = (lo - pencil.margin()).max(0.0);
    let hi = if hi == 0.0 { 0.0 } else { hi + pencil.margin() };
    DistanceResult {
        lo: lo.min(hi),
        hi,
        evals,
    }
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
pub(crate) fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn nearest_on_segment(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    if len2 == 0.0 {
        return a;
    }
    let t = (-(a[0] * d[0] + a[1] * d[1]) / len2).clamp(0.0, 1.0);
    [a[0] + t * d[0], a[1] + t * d[1]]
}

/// Point of `conv(points)` closest to the origin.
pub(crate) fn nearest_hull_point(points: &[[f64; 2]]) -> [f64; 2] {
    let hull = convex_hull(points);
    match hull.len() {
        0 => [0.0, 0.0],
        1 => hull[0],
        2 => nearest_on_segment(hull[0], hull[1]),
        n => {
            let inside = (0..n).all(|i| cross(hull[i], hull[(i + 1) % n], [0.0, 0.0]) >= 0.0);
            if inside {
                return [0.0, 0.0];
            }
            (0..n)
                .map(|i| nearest_on_segment(hull[i], hull[(i + 1) % n]))
                .min_by(|p, q| (p[0].hypot(p[1])).total_cmp(&q[0].hypot(q[1])))
                .unwrap()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [1.0, 1.0],
            [0.0, 1.0],
            [0.5, 0.5],
            [0.5, 0.0],
        ];
        assert_eq!(convex_hull(&pts).len(), 4);
    }

    #[test]
    fn nearest_point_cases() {
        let sq = [[1.0, -1.0], [3.0, -1.0], [3.0, 1.0], [1.0, 1.0]];
        assert_eq!(nearest_hull_point(&sq), [1.0, 0.0]);
        let around = [[-1.0, -1.0], [1.0, -1.0], [0.0, 2.0]];
        assert_eq!(nearest_hull_point(&around), [0.0, 0.0]);
        assert_eq!(nearest_hull_point(&[[2.0, 2.0]]), [2.0, 2.0]);
        let seg = nearest_hull_point(&[[1.0, -1.0], [1.0, 1.0]]);
        assert!((seg[0] - 1.0).abs() < 1e-15 && seg[1].abs() < 1e-15);
    }
}
