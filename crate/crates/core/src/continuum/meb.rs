//! Smallest enclosing ball of a handful of points (Welzl's recursion).

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Largest ambient dimension handled.
pub const MAX_DIM: usize = 8;
const MAX_SUPPORT: usize = MAX_DIM + 1;

const REL_EPS: f64 = 1e-12;

type Point = [f64; MAX_DIM];

#[derive(Clone, Copy)]
struct RawBall {
    center: Point,
    /// Squared radius.
    r2: f64,
}

fn dist2(a: &Point, b: &Point, dim: usize) -> f64 {
    (0..dim).map(|i| (a[i] - b[i]) * (a[i] - b[i])).sum()
}

/// Ball through all of `support`, centred in their affine hull. Affinely
/// dependent supports (which only arise from duplicate points) fall back to
/// dropping the dependent directions.
fn circumball_raw(support: &[Point], dim: usize) -> Option<RawBall> {
    let (first, rest) = support.split_first()?;
    let k = rest.len();
    let mut q = [[0.0; MAX_DIM]; MAX_SUPPORT];
    for (qi, p) in q.iter_mut().zip(rest) {
        for axis in 0..dim {
            qi[axis] = p[axis] - first[axis];
        }
    }
    // Solve 2 (q_i · q_j) α_j = |q_i|².
    let mut a = [[0.0; MAX_SUPPORT + 1]; MAX_SUPPORT];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = 2.0 * (0..dim).map(|x| q[i][x] * q[j][x]).sum::<f64>();
        }
        a[i][k] = (0..dim).map(|x| q[i][x] * q[i][x]).sum();
    }
    let alpha = solve(&mut a, k);
    let mut center = *first;
    for i in 0..k {
        for axis in 0..dim {
            center[axis] += alpha[i] * q[i][axis];
        }
    }
    let r2 = support
        .iter()
        .map(|p| dist2(p, &center, dim))
        .fold(0.0, f64::max);
    Some(RawBall { center, r2 })
}

/// Gaussian elimination with partial pivoting on an augmented `k × (k+1)`
/// system; singular directions get a zero coefficient.
fn solve(a: &mut [[f64; MAX_SUPPORT + 1]; MAX_SUPPORT], k: usize) -> [f64; MAX_SUPPORT] {
    let scale = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .fold(0.0f64, |m, (i, j)| m.max(a[i][j].abs()));
    let mut pivots = [usize::MAX; MAX_SUPPORT];
    let mut row = 0;
    for col in 0..k {
        let Some(best) = (row..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
        else {
            break;
        };
        if a[best][col].abs() <= 1e-14 * scale {
            continue;
        }
        a.swap(row, best);
        for i in 0..k {
            if i != row {
                let f = a[i][col] / a[row][col];
                if f != 0.0 {
                    for j in col..=k {
                        a[i][j] -= f * a[row][j];
                    }
                }
            }
        }
        pivots[col] = row;
        row += 1;
    }
    let mut out = [0.0; MAX_SUPPORT];
    for col in 0..k {
        if pivots[col] != usize::MAX {
            out[col] = a[pivots[col]][k] / a[pivots[col]][col];
        }
    }
    out
}

fn contains(ball: &Option<RawBall>, p: &Point, dim: usize) -> bool {
    match ball {
        None => false,
        Some(b) => dist2(p, &b.center, dim).sqrt() <= b.r2.sqrt() * (1.0 + REL_EPS) + 1e-15,
    }
}

fn welzl(
    points: &[Point],
    support: &mut [Point; MAX_SUPPORT],
    ns: usize,
    dim: usize,
) -> Option<RawBall> {
    if points.is_empty() || ns == dim + 1 {
        return circumball_raw(&support[..ns], dim);
    }
    let (p, rest) = points.split_last().unwrap();
    let ball = welzl(rest, support, ns, dim);
    if contains(&ball, p, dim) {
        return ball;
    }
    support[ns] = *p;
    welzl(rest, support, ns + 1, dim)
}

fn pack(points: &[&[f64]]) -> (Vec<Point>, usize) {
    let dim = points[0].len();
    assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
    let packed = points
        .iter()
        .map(|p| {
            let mut x = [0.0; MAX_DIM];
            x[..dim].copy_from_slice(p);
            x
        })
        .collect();
    (packed, dim)
}

fn finish(b: RawBall, dim: usize) -> Ball {
    Ball {
        center: b.center[..dim].to_vec(),
        radius: b.r2.sqrt(),
    }
}

/// Ball through all of `points`, centred in their affine hull. `None` for an
/// empty input.
pub fn circumball(points: &[&[f64]]) -> Option<Ball> {
    if points.is_empty() {
        return None;
    }
    let (packed, dim) = pack(points);
    circumball_raw(&packed, dim).map(|b| finish(b, dim))
}

/// Radius of the smallest ball containing `points`, without allocating.
pub(crate) fn min_enclosing_radius_fixed(points: &[Point], dim: usize) -> f64 {
    let mut support = [[0.0; MAX_DIM]; MAX_SUPPORT];
    welzl(points, &mut support, 0, dim).map_or(0.0, |b| b.r2.sqrt())
}

/// Smallest ball containing every point. Panics on an empty input.
pub fn min_enclosing_ball(points: &[&[f64]]) -> Ball {
    assert!(!points.is_empty());
    let (packed, dim) = pack(points);
    let mut support = [[0.0; MAX_DIM]; MAX_SUPPORT];
    finish(
        welzl(&packed, &mut support, 0, dim).expect("nonempty input"),
        dim,
    )
}
