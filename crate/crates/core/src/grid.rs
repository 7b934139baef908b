//! Uniform-grid spatial index for nearest-neighbor-under-constraint queries.
//!
//! Forest construction needs, for each vertex, the closest point among an
//! eligibility-filtered candidate set. The filter does not change the
//! metric, so an expanding ring search over grid cells stays correct: once
//! the closed distance to the next unscanned ring exceeds the best
//! candidate found, the best candidate is certified.
//!
//! All argmins are taken in the lexicographic order `(distance, index)`,
//! matching the nonequidistance tie-break of the sampling module.

use crate::geom::{Norm, Point};

pub struct GridIndex {
    cell: f64,
    x0: f64,
    y0: f64,
    nx: i64,
    ny: i64,
    cells: Vec<Vec<u32>>,
}

/// `(distance, index)` lexicographic comparison.
#[inline]
pub fn closer(d_a: f64, i_a: usize, d_b: f64, i_b: usize) -> bool {
    d_a < d_b || (d_a == d_b && i_a < i_b)
}

impl GridIndex {
    /// Builds an index over `points` with the given cell side (usually
    /// `1/sqrt(intensity)`).
    pub fn new(points: &[Point], cell: f64) -> Self {
        assert!(cell > 0.0);
        let (mut min_x, mut min_y) = (0.0f64, 0.0f64);
        let (mut max_x, mut max_y) = (0.0f64, 0.0f64);
        for p in points {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        let x0 = min_x - cell;
        let y0 = min_y - cell;
        let nx = (((max_x - x0) / cell).floor() as i64 + 2).max(1);
        let ny = (((max_y - y0) / cell).floor() as i64 + 2).max(1);
        let mut cells = vec![Vec::new(); (nx * ny) as usize];
        for (i, p) in points.iter().enumerate() {
            let cx = ((p.x - x0) / cell).floor() as i64;
            let cy = ((p.y - y0) / cell).floor() as i64;
            cells[(cy * nx + cx) as usize].push(i as u32);
        }
        GridIndex {
            cell,
            x0,
            y0,
            nx,
            ny,
            cells,
        }
    }

    fn cell_of(&self, p: Point) -> (i64, i64) {
        let cx = ((p.x - self.x0) / self.cell).floor() as i64;
        let cy = ((p.y - self.y0) / self.cell).floor() as i64;
        (cx, cy)
    }

    /// Nearest eligible point to `from` under `norm`, ties broken by index.
    /// Returns the winning index and its distance.
    pub fn nearest(
        &self,
        points: &[Point],
        from: Point,
        norm: Norm,
        mut eligible: impl FnMut(usize) -> bool,
    ) -> Option<(usize, f64)> {
        let (cx, cy) = self.cell_of(from);
        let mut best: Option<(usize, f64)> = None;
        // Largest ring that can still intersect the grid box.
        let max_ring = (cx.max(self.nx - 1 - cx).max(cy).max(self.ny - 1 - cy)).max(0);
        for ring in 0..=max_ring {
            if let Some((_, d)) = best {
                // Any point in ring `ring` is at distance >= (ring-1)*cell.
                if d < (ring - 1) as f64 * self.cell {
                    break;
                }
            }
            self.for_ring_cells(cx, cy, ring, |cell_idx| {
                for &j in &self.cells[cell_idx] {
                    let j = j as usize;
                    if !eligible(j) {
                        continue;
                    }
                    let d = norm.dist(points[j], from);
                    match best {
                        Some((bi, bd)) if !closer(d, j, bd, bi) => {}
                        _ => best = Some((j, d)),
                    }
                }
            });
        }
        best
    }

    fn for_ring_cells(&self, cx: i64, cy: i64, ring: i64, mut visit: impl FnMut(usize)) {
        let mut probe = |x: i64, y: i64, visit: &mut dyn FnMut(usize)| {
            if x >= 0 && x < self.nx && y >= 0 && y < self.ny {
                visit((y * self.nx + x) as usize);
            }
        };
        if ring == 0 {
            probe(cx, cy, &mut visit);
            return;
        }
        for x in (cx - ring)..=(cx + ring) {
            probe(x, cy - ring, &mut visit);
            probe(x, cy + ring, &mut visit);
        }
        for y in (cy - ring + 1)..=(cy + ring - 1) {
            probe(cx - ring, y, &mut visit);
            probe(cx + ring, y, &mut visit);
        }
    }
}

/// Reference linear-scan argmin with the same contract as
/// [`GridIndex::nearest`].
pub fn brute_nearest(
    points: &[Point],
    from: Point,
    norm: Norm,
    mut eligible: impl FnMut(usize) -> bool,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for j in 0..points.len() {
        if !eligible(j) {
            continue;
        }
        let d = norm.dist(points[j], from);
        match best {
            Some((bi, bd)) if !closer(d, j, bd, bi) => {}
            _ => best = Some((j, d)),
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    #[test]
    fn grid_matches_brute_force_on_random_sets() {
        let mut r = rng::stream(3, &[99]);
        for trial in 0..50 {
            let n = 1 + (trial * 7) % 300;
            let pts: Vec<Point> = (0..n)
                .map(|_| Point::new(r.gen::<f64>() * 20.0 - 10.0, r.gen::<f64>() * 20.0 - 10.0))
                .collect();
            let grid = GridIndex::new(&pts, 1.0);
            for _ in 0..20 {
                let q = Point::new(r.gen::<f64>() * 24.0 - 12.0, r.gen::<f64>() * 24.0 - 12.0);
                let cutoff = r.gen::<f64>() * 10.0;
                let filter = |j: usize| pts[j].x < cutoff;
                for norm in [Norm::L2, Norm::Linf] {
                    let a = grid.nearest(&pts, q, norm, filter);
                    let b = brute_nearest(&pts, q, norm, filter);
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn lexicographic_tie_break_prefers_lower_index() {
        // Two points equidistant from the query in exact arithmetic.
        let pts = vec![Point::new(1.0, 0.0), Point::new(-1.0, 0.0)];
        let grid = GridIndex::new(&pts, 1.0);
        let q = Point::new(0.0, 0.0);
        let got = grid.nearest(&pts, q, Norm::L2, |_| true).unwrap();
        assert_eq!(got.0, 0);
        assert_eq!(brute_nearest(&pts, q, Norm::L2, |_| true).unwrap().0, 0);
    }
}
