//! Marching squares on a rectilinear grid with masked cells.

use std::collections::HashMap;

/// Edge of the grid: `(i, j, horizontal)`; a horizontal edge joins node
/// `(i, j)` to `(i+1, j)`, a vertical one `(i, j)` to `(i, j+1)`.
type Edge = (usize, usize, bool);

/// A traced null line; `closed` when it returns to its start.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

/// Null lines of `values` (row-major, `values[j * nx + i]` at `(xs[i], ys[j])`).
///
/// Cells with a corner marked invalid, or flagged by `masked`, produce no
/// segments, so lines end at their boundary. `field(x, y)` evaluates the
/// sampled function off the grid: crossings are refined on it along their
/// edge, and saddle cells are resolved by its sign at the cell centre. Where
/// it returns `None` the crossing is linearly interpolated and the saddle
/// takes the corner mean.
pub fn trace_nulls<M, C>(xs: &[f64], ys: &[f64], values: &[f64], valid: &[bool], masked: M, field: C) -> Vec<Trace>
where
    M: Fn(usize, usize) -> bool,
    C: Fn(f64, f64) -> Option<f64>,
{
    let nx = xs.len();
    let ny = ys.len();
    let at = |i: usize, j: usize| values[j * nx + i];
    let pos = |v: f64| v > 0.0;
    let point = |e: Edge| -> (f64, f64) {
        let (i, j, horizontal) = e;
        let (i2, j2) = if horizontal { (i + 1, j) } else { (i, j + 1) };
        let (p, q) = ((xs[i], ys[j]), (xs[i2], ys[j2]));
        let f = refine_edge(at(i, j), at(i2, j2), |u| {
            field(p.0 + u * (q.0 - p.0), p.1 + u * (q.1 - p.1))
        });
        (p.0 + f * (q.0 - p.0), p.1 + f * (q.1 - p.1))
    };

    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let ok = valid[j * nx + i] && valid[j * nx + i + 1] && valid[(j + 1) * nx + i] && valid[(j + 1) * nx + i + 1];
            if !ok || masked(i, j) {
                continue;
            }
            let (a, b, c, d) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            let bottom = (i, j, true);
            let right = (i + 1, j, false);
            let top = (i, j + 1, true);
            let left = (i, j, false);
            let mut crossed = Vec::with_capacity(4);
            if pos(a) != pos(b) {
                crossed.push(bottom);
            }
            if pos(b) != pos(c) {
                crossed.push(right);
            }
            if pos(c) != pos(d) {
                crossed.push(top);
            }
            if pos(d) != pos(a) {
                crossed.push(left);
            }
            match crossed.len() {
                2 => segments.push((crossed[0], crossed[1])),
                4 => {
                    let xm = 0.5 * (xs[i] + xs[i + 1]);
                    let ym = 0.5 * (ys[j] + ys[j + 1]);
                    let mid = field(xm, ym).unwrap_or(0.25 * (a + b + c + d));
                    if pos(mid) == pos(a) {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    }
                }
                _ => {}
            }
        }
    }

    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, &(e1, e2)) in segments.iter().enumerate() {
        by_edge.entry(e1).or_default().push(k);
        by_edge.entry(e2).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let walk = |start_seg: usize, start_edge: Edge, used: &mut Vec<bool>| -> (Vec<Edge>, bool) {
        let mut edges = vec![start_edge];
        let mut seg = start_seg;
        let mut edge = start_edge;
        loop {
            used[seg] = true;
            let (e1, e2) = segments[seg];
            edge = if e1 == edge { e2 } else { e1 };
            edges.push(edge);
            if edge == start_edge {
                return (edges, true);
            }
            match by_edge[&edge].iter().find(|&&k| !used[k]) {
                Some(&k) => seg = k,
                None => return (edges, false),
            }
        }
    };

    // deterministic order: open lines from their first free end, then loops
    let mut ends: Vec<(Edge, usize)> = by_edge
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(&e, v)| (e, v[0]))
        .collect();
    ends.sort();
    let mut traces = Vec::new();
    for (e, k) in ends {
        if used[k] {
            continue;
        }
        let (edges, closed) = walk(k, e, &mut used);
        traces.push(Trace {
            points: edges.into_iter().map(point).collect(),
            closed,
        });
    }
    for k in 0..segments.len() {
        if !used[k] {
            let (edges, closed) = walk(k, segments[k].0, &mut used);
            traces.push(Trace {
                points: edges.into_iter().map(point).collect(),
                closed,
            });
        }
    }
    traces
}

const EDGE_ITERATIONS: usize = 8;
const EDGE_TOL: f64 = 1e-9;

/// Zero of `g` on `[0, 1]` from end values `a = g(0)`, `b = g(1)` of opposite
/// sign, by Illinois false position; the linear estimate if `g` fails.
fn refine_edge(a: f64, b: f64, g: impl Fn(f64) -> Option<f64>) -> f64 {
    let (mut lo, mut hi, mut flo, mut fhi) = (0.0, 1.0, a, b);
    let mut u = flo / (flo - fhi);
    let mut side = 0i8;
    for _ in 0..EDGE_ITERATIONS {
        if hi - lo < EDGE_TOL {
            break;
        }
        let Some(fu) = g(u).filter(|v| v.is_finite()) else {
            break;
        };
        if fu == 0.0 {
            return u;
        }
        if (fu > 0.0) == (flo > 0.0) {
            lo = u;
            flo = fu;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = u;
            fhi = fu;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        }
        u = lo + (hi - lo) * flo / (flo - fhi);
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn circle_is_one_closed_loop() {
        let xs = lin(-2.0, 2.0, 41);
        let ys = lin(-2.0, 2.0, 41);
        let vals: Vec<f64> = ys
            .iter()
            .flat_map(|&y| xs.iter().map(move |&x| x * x + y * y - 1.0))
            .collect();
        let valid = vec![true; vals.len()];
        let t = trace_nulls(&xs, &ys, &vals, &valid, |_, _| false, |_, _| None);
        assert_eq!(t.len(), 1);
        assert!(t[0].closed);
        for &(x, y) in &t[0].points {
            assert!(((x * x + y * y).sqrt() - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn masked_cells_cut_lines_open() {
        let xs = lin(-1.0, 1.0, 21);
        let ys = lin(-1.0, 1.0, 21);
        let vals: Vec<f64> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| x - 0.05 * y)).collect();
        let valid = vec![true; vals.len()];
        let t = trace_nulls(&xs, &ys, &vals, &valid, |_, j| j == 10, |_, _| None);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|l| !l.closed));
    }

    #[test]
    fn saddle_follows_center_sign() {
        // f = x y on a single cell centred at the origin, perturbed at the centre
        let xs = vec![-1.0, 1.0];
        let ys = vec![-1.0, 1.0];
        let vals = vec![1.0, -1.0, -1.0, 1.0];
        let valid = vec![true; 4];
        let a = trace_nulls(&xs, &ys, &vals, &valid, |_, _| false, |_, _| Some(0.5));
        let b = trace_nulls(&xs, &ys, &vals, &valid, |_, _| false, |_, _| Some(-0.5));
        assert_eq!(a.len(), 2);
        assert_eq!(b.len(), 2);
        assert_ne!(a, b);
    }

    #[test]
    fn crossings_are_refined_on_the_field() {
        // a curved null line that linear interpolation on a coarse grid misses
        let g = |x: f64, y: f64| (3.0 * x).exp() - 1.5 - y;
        let xs = lin(-1.0, 1.0, 5);
        let ys = lin(-1.0, 1.0, 5);
        let vals: Vec<f64> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| g(x, y))).collect();
        let valid = vec![true; vals.len()];
        let t = trace_nulls(&xs, &ys, &vals, &valid, |_, _| false, |x, y| Some(g(x, y)));
        assert!(!t.is_empty());
        for &(x, y) in t.iter().flat_map(|l| &l.points) {
            assert!(g(x, y).abs() < 1e-8, "({x}, {y})");
        }
    }
}
