//! Exact membership predicates for the closure of the two-generator
//! semigroup: the union-of-strata characterization on the transformation
//! side, the plane-region test for induced orbits, the orbit-closure union
//! test, and the dense-orbit sampler on the unit square.

use crate::error::{Error, Result};
use crate::mat2::{canonicalize, Mat2, Point, ProjectiveMap};
use crate::par;
use std::collections::HashSet;

/// Absolute slack on the closed-region inequalities; boundary points are
/// in by convention.
pub const TAU_MEM: f64 = 1e-9;
/// Degenerate-diagonal tolerance.
pub const TAU_DIAG: f64 = 1e-9;

/// Outcome of the stratum-membership test.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClosureVerdict {
    pub in_closure: bool,
    pub witness_k: Option<i64>,
    /// Distance from the nearest integer to the admissible k-interval in
    /// log_b units; zero when some integer lies inside.
    pub margin: f64,
}

/// Membership in the closure strata: f belongs iff some integer k lies in
/// [log_b det, log_b (sigma/det)], checked with absolute slack TAU_MEM on
/// the underlying inequality det <= min(b^k, b^-k sigma).
pub fn in_u(f: &ProjectiveMap<f64>, b: f64, k_window: i64) -> Result<ClosureVerdict> {
    if !(b > 1.0) {
        return Err(Error::Domain("membership base b must exceed 1".into()));
    }
    let sl = f
        .spectral_log()
        .ok_or_else(|| Error::NotInDomain("delta entry is zero; det/sigma undefined".into()))?;
    if sl.det_sign < 0.0 {
        return Err(Error::NotInDomain(
            "det_norm is negative; only the det >= 0 sector is characterized".into(),
        ));
    }
    let ln_b = b.ln();
    let lo = sl.log_abs_det / ln_b;
    let hi = (sl.log_sigma - sl.log_abs_det) / ln_b;
    let det = sl.log_abs_det.exp();
    let sigma = sl.log_sigma.exp();

    let direct_check = |k: i64| -> bool {
        if det.is_finite() && sigma.is_finite() && k.abs() < 900 {
            let bound = b.powi(k as i32).min(b.powi(-(k as i32)) * sigma);
            det <= bound + TAU_MEM
        } else {
            k as f64 >= lo - 1e-12 && k as f64 <= hi + 1e-12
        }
    };

    // Margin: distance from the nearest integer to [lo, hi].
    let (margin, best_k) = if lo > hi {
        // Interval empty (can only happen through rounding); nearest integer
        // to the midpoint.
        let mid = 0.5 * (lo + hi);
        (lo - hi, mid.round() as i64)
    } else if lo.ceil() <= hi {
        (0.0, lo.ceil() as i64)
    } else {
        // No integer inside: floor(lo) sits below, ceil(hi) above.
        let below = lo - lo.floor();
        let above = hi.ceil() - hi;
        if below <= above {
            (below, lo.floor() as i64)
        } else {
            (above, hi.ceil() as i64)
        }
    };
    let k = best_k.clamp(-k_window, k_window);
    Ok(ClosureVerdict {
        in_closure: direct_check(k),
        witness_k: direct_check(k).then_some(k),
        margin,
    })
}

/// Base point and parameters defining an orbit region query.
#[derive(Debug, Clone, Copy)]
pub struct OrbitRegionQuery {
    pub x: f64,
    pub y: f64,
    pub a: f64,
    /// Scaling base for the union test.
    pub b: f64,
}

impl OrbitRegionQuery {
    fn validate(&self) -> Result<()> {
        if !(self.x > 0.0 && self.y > 0.0 && self.a > 0.0) {
            return Err(Error::Domain("base point and a must be positive".into()));
        }
        Ok(())
    }
}

/// The region attached to base (x, y): bounded below the diagonal by the
/// hyperbola through the origin and the slope-1 half-line from the base, and
/// above by their images under coordinatewise inversion u -> a/u. Membership
/// reduces to the inequality
///   u >= v >= max(u - x + y, u x y / (u x - u y + x y))
/// after normalizing both base and point below the diagonal.
pub fn omega_contains(u: f64, v: f64, q: &OrbitRegionQuery) -> Result<bool> {
    q.validate()?;
    if !(u > 0.0 && v > 0.0) {
        return Err(Error::Domain("query point must be positive".into()));
    }
    let (x, y) = if q.x >= q.y {
        (q.x, q.y)
    } else {
        (q.a / q.x, q.a / q.y)
    };
    let (u, v) = if u >= v { (u, v) } else { (q.a / u, q.a / v) };
    if (x - y).abs() <= TAU_DIAG {
        return Ok((u - v).abs() <= TAU_DIAG);
    }
    let line = u - x + y;
    let hyper = u * x * y / (u * x - u * y + x * y);
    Ok(v >= line - TAU_MEM && v >= hyper - TAU_MEM)
}

/// Result of the union-over-scalings test.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct OrbitVerdict {
    pub contains: bool,
    pub witness_k: Option<i64>,
    /// True when the analytic k-window was inconclusive and the clamped
    /// fallback scan decided the verdict.
    pub fallback: bool,
}

/// Membership in the union of regions over bases (b^k x, b^k y). The two
/// boundary constraints are monotone in k, so the admissible window has the
/// closed form [ceil(log_b((u-v)/(x-y))), floor(log_b(uv(x-y)/(xy(u-v))))];
/// a band of slack around it is scanned with the slackened region test.
pub fn orbit_closure_contains(u: f64, v: f64, q: &OrbitRegionQuery) -> Result<OrbitVerdict> {
    q.validate()?;
    if !(q.b > 1.0) {
        return Err(Error::Domain("union base b must exceed 1".into()));
    }
    if !(u > 0.0 && v > 0.0) {
        return Err(Error::Domain("query point must be positive".into()));
    }
    let (x, y) = if q.x >= q.y {
        (q.x, q.y)
    } else {
        (q.a / q.x, q.a / q.y)
    };
    let (u, v) = if u >= v { (u, v) } else { (q.a / u, q.a / v) };
    if (x - y).abs() <= TAU_DIAG {
        return Ok(OrbitVerdict {
            contains: (u - v).abs() <= TAU_DIAG,
            witness_k: None,
            fallback: false,
        });
    }
    if (u - v).abs() <= TAU_DIAG {
        // The full diagonal belongs to every region in the family.
        return Ok(OrbitVerdict {
            contains: true,
            witness_k: Some(0),
            fallback: false,
        });
    }
    let ln_b = q.b.ln();
    let k_lo = (((u - v) / (x - y)).ln() / ln_b).ceil();
    let k_hi = ((u * v * (x - y) / (x * y * (u - v))).ln() / ln_b).floor();
    let (lo, hi, fallback) = if k_lo.is_finite() && k_hi.is_finite() {
        ((k_lo as i64 - 2).max(-64), (k_hi as i64 + 2).min(64), false)
    } else {
        (-64, 64, true)
    };
    for k in lo..=hi {
        let base = OrbitRegionQuery {
            x: x * q.b.powi(k as i32),
            y: y * q.b.powi(k as i32),
            a: q.a,
            b: q.b,
        };
        if omega_contains(u, v, &base)? {
            return Ok(OrbitVerdict {
                contains: true,
                witness_k: Some(k),
                fallback,
            });
        }
    }
    Ok(OrbitVerdict {
        contains: false,
        witness_k: None,
        fallback,
    })
}

/// Conjugation by theta(x) = 1/(x+1), carrying transformations of
/// (0, infinity) to transformations of (0, 1).
pub fn conjugate_by_theta(f: &ProjectiveMap<f64>) -> ProjectiveMap<f64> {
    let theta = Mat2::new(0.0, 1.0, 1.0, 1.0);
    let theta_inv = Mat2::new(-1.0, 1.0, 1.0, 0.0);
    canonicalize(&theta.mul(f.rep()).mul(&theta_inv)).expect("conjugation preserves invertibility")
}

pub fn conjugate_by_theta_inv(f: &ProjectiveMap<f64>) -> ProjectiveMap<f64> {
    let theta = Mat2::new(0.0, 1.0, 1.0, 1.0);
    let theta_inv = Mat2::new(-1.0, 1.0, 1.0, 0.0);
    canonicalize(&theta_inv.mul(f.rep()).mul(&theta)).expect("conjugation preserves invertibility")
}

/// Coverage of the unit square by a breadth-first orbit of the conjugated
/// generator pair.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CoverageReport {
    pub grid_n: u32,
    pub depth: u32,
    pub points_visited: usize,
    /// Max over grid cells of the distance from the cell center to the
    /// nearest orbit point.
    pub coverage: f64,
    /// Row-major per-cell minimal distances.
    pub cell_distances: Vec<f64>,
}

/// Iterate the induced action of the conjugated pair on a starting point of
/// the unit square, breadth-first with lattice deduplication at resolution
/// 1/(4 grid_n), and report per-cell coverage of the grid_n x grid_n grid.
pub fn dense_orbit_sample(
    a: f64,
    b: f64,
    depth: u32,
    grid_n: u32,
    start: (f64, f64),
) -> Result<CoverageReport> {
    sample_with_mult(a, b, depth, grid_n, start, 4.0)
}

#[doc(hidden)]
pub fn sample_with_mult(
    a: f64,
    b: f64,
    depth: u32,
    grid_n: u32,
    start: (f64, f64),
    mult: f64,
) -> Result<CoverageReport> {
    if !(a > 0.0 && b > 1.0) {
        return Err(Error::Domain("need a > 0 and b > 1".into()));
    }
    if depth > 24 {
        return Err(Error::BudgetExceeded(format!(
            "depth {depth} exceeds guard 24"
        )));
    }
    if grid_n < 2 {
        return Err(Error::Domain("grid must be at least 2x2".into()));
    }
    let r_hat = conjugate_by_theta(&canonicalize(&Mat2::new(1.0, a, 1.0, 0.0))?);
    let s_hat = conjugate_by_theta(&canonicalize(&Mat2::new(1.0, 0.0, 0.0, b))?);
    let maps = [r_hat, s_hat];

    let resolution = mult * grid_n as f64;
    // Deduplicate in logit coordinates: the generator pair piles orbit
    // points exponentially close to the square's boundary, and survival of
    // their (genuinely distinct) futures requires cells that refine there.
    let logit = |t: f64| -> f64 {
        let t = t.clamp(1e-14, 1.0 - 1e-14);
        (t / (1.0 - t)).ln()
    };
    let key = move |p: (f64, f64)| -> (i64, i64) {
        (
            (logit(p.0) * resolution / 4.0).round() as i64,
            (logit(p.1) * resolution / 4.0).round() as i64,
        )
    };
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut frontier = vec![start];
    seen.insert(key(start));
    points.push(start);
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for map in &maps {
                let fx = map.apply(Point::Finite(p.0)).finite();
                let fy = map.apply(Point::Finite(p.1)).finite();
                if let (Some(fx), Some(fy)) = (fx, fy) {
                    let q = (fx, fy);
                    if seen.insert(key(q)) {
                        points.push(q);
                        next.push(q);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    let n = grid_n as i64;
    let h = 1.0 / (2.0 * grid_n as f64);
    let cell_distances: Vec<f64> = par::map_range(0, n * n, |idx| {
        let i = idx / n;
        let j = idx % n;
        let cx = (2 * i + 1) as f64 * h;
        let cy = (2 * j + 1) as f64 * h;
        // Distance from the closed cell square to the nearest orbit point;
        // a visited cell scores zero.
        points
            .iter()
            .map(|p| {
                let dx = ((p.0 - cx).abs() - h).max(0.0);
                let dy = ((p.1 - cy).abs() - h).max(0.0);
                (dx * dx + dy * dy).sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    });
    let coverage = cell_distances.iter().copied().fold(0.0, f64::max);
    Ok(CoverageReport {
        grid_n,
        depth,
        points_visited: points.len(),
        coverage,
        cell_distances,
    })
}

/// Sampled boundary curves of the orbit region, for CSV/plotting.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OmegaBoundary {
    /// True when the base sits on the diagonal and the region degenerates.
    pub degenerate: bool,
    pub hyperbola: Vec<(f64, f64)>,
    pub half_line: Vec<(f64, f64)>,
    pub hyperbola_image: Vec<(f64, f64)>,
    pub half_line_image: Vec<(f64, f64)>,
}

/// Sample the four boundary curves with n points each: the hyperbola from
/// the origin to the base, the slope-1 half-line from the base, and their
/// images under coordinatewise inversion (which are again a half-line and a
/// hyperbola for the inverted base).
pub fn omega_boundary(q: &OrbitRegionQuery, n: u32) -> Result<OmegaBoundary> {
    q.validate()?;
    if n < 2 {
        return Err(Error::Domain("need at least 2 sample points".into()));
    }
    let samples = n as usize;
    if (q.x - q.y).abs() <= TAU_DIAG {
        let top = 2.0 * (q.x.max(q.a / q.x)).max(1.0);
        let diag: Vec<(f64, f64)> = (0..samples)
            .map(|i| {
                let t = top * i as f64 / (samples - 1) as f64;
                (t, t)
            })
            .collect();
        return Ok(OmegaBoundary {
            degenerate: true,
            hyperbola: diag.clone(),
            half_line: diag.clone(),
            hyperbola_image: diag.clone(),
            half_line_image: diag,
        });
    }
    let hyperbola_for = |x: f64, y: f64| -> Vec<(f64, f64)> {
        (0..samples)
            .map(|i| {
                let u = x * i as f64 / (samples - 1) as f64;
                let v = if u == 0.0 {
                    0.0
                } else {
                    u * x * y / (u * x - u * y + x * y)
                };
                (u, v)
            })
            .collect()
    };
    let line_for = |x: f64, y: f64| -> Vec<(f64, f64)> {
        let span = 2.0 * (x + y + 1.0);
        (0..samples)
            .map(|i| {
                let t = span * i as f64 / (samples - 1) as f64;
                (x + t, y + t)
            })
            .collect()
    };
    Ok(OmegaBoundary {
        degenerate: false,
        hyperbola: hyperbola_for(q.x, q.y),
        half_line: line_for(q.x, q.y),
        hyperbola_image: hyperbola_for(q.a / q.x, q.a / q.y),
        half_line_image: line_for(q.a / q.x, q.a / q.y),
    })
}
