//! Exact integer feasibility for systems of linear inequalities in two
//! variables.
//!
//! Every pairwise question about two orbits (do some members cross? do they
//! share an endpoint?) becomes a system `a*x + b*y <= c` over the orbit
//! parameters `x, y >= 0`. The real solution set is a pointed polyhedron
//! `conv(V) + cone(R)`. Any integer point can be pulled back by integer
//! multiples of the (integral, non-negative) recession rays into the bounded
//! box spanned by `V + [0,1]*R`, so enumerating that box along its narrower
//! axis is a complete decision procedure. All arithmetic is exact.

use num_integer::Integer;
use num_rational::Ratio;

type Q = Ratio<i128>;

/// One half-plane `a*x + b*y <= c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl HalfPlane {
    fn holds(&self, x: i128, y: i128) -> bool {
        self.a * x + self.b * y <= self.c
    }

    fn holds_q(&self, x: Q, y: Q) -> bool {
        Q::from(self.a) * x + Q::from(self.b) * y <= Q::from(self.c)
    }
}

/// A system over integer unknowns `x`, `y`, each bounded below.
#[derive(Clone, Debug)]
pub struct System {
    rows: Vec<HalfPlane>,
}

impl System {
    /// An unconstrained system with `x >= x_min` and `y >= y_min`.
    pub fn new(x_min: i128, y_min: i128) -> Self {
        let mut sys = System { rows: Vec::new() };
        sys.le(-1, 0, -x_min);
        sys.le(0, -1, -y_min);
        sys
    }

    pub fn le(&mut self, a: i128, b: i128, c: i128) -> &mut Self {
        self.rows.push(HalfPlane { a, b, c });
        self
    }

    /// Strict inequality over the integers.
    pub fn lt(&mut self, a: i128, b: i128, c: i128) -> &mut Self {
        self.le(a, b, c - 1)
    }

    pub fn eq(&mut self, a: i128, b: i128, c: i128) -> &mut Self {
        self.le(a, b, c);
        self.le(-a, -b, -c)
    }

    pub fn x_at_most(&mut self, hi: i128) -> &mut Self {
        self.le(1, 0, hi)
    }

    pub fn y_at_most(&mut self, hi: i128) -> &mut Self {
        self.le(0, 1, hi)
    }

    pub fn holds(&self, x: i128, y: i128) -> bool {
        self.rows.iter().all(|r| r.holds(x, y))
    }

    fn vertices(&self) -> Vec<(Q, Q)> {
        let mut out = Vec::new();
        for (i, p) in self.rows.iter().enumerate() {
            for q in &self.rows[i + 1..] {
                let det = p.a * q.b - p.b * q.a;
                if det == 0 {
                    continue;
                }
                let x = Q::new(p.c * q.b - p.b * q.c, det);
                let y = Q::new(p.a * q.c - p.c * q.a, det);
                if self.rows.iter().all(|r| r.holds_q(x, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn recession_rays(&self) -> Vec<(i128, i128)> {
        let mut out: Vec<(i128, i128)> = Vec::new();
        for r in &self.rows {
            for (dx, dy) in [(r.b, -r.a), (-r.b, r.a)] {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let g = dx.gcd(&dy);
                let ray = (dx / g, dy / g);
                let inside = self.rows.iter().all(|s| s.a * ray.0 + s.b * ray.1 <= 0);
                if inside && !out.contains(&ray) {
                    out.push(ray);
                }
            }
        }
        out
    }

    /// The integer solution minimizing `(x + y, x)`, if any exists.
    pub fn first_solution(&self) -> Option<(i128, i128)> {
        let verts = self.vertices();
        if verts.is_empty() {
            // Both unknowns are bounded below, so a non-empty region has a vertex.
            return None;
        }
        let rays = self.recession_rays();
        debug_assert!(rays.iter().all(|&(dx, dy)| dx >= 0 && dy >= 0));

        let min_x = verts.iter().map(|v| v.0).min().unwrap().ceil().to_integer();
        let min_y = verts.iter().map(|v| v.1).min().unwrap().ceil().to_integer();
        let ray_x: i128 = rays.iter().map(|r| r.0).sum();
        let ray_y: i128 = rays.iter().map(|r| r.1).sum();
        let max_x = verts
            .iter()
            .map(|v| v.0)
            .max()
            .unwrap()
            .floor()
            .to_integer()
            + ray_x;
        let max_y = verts
            .iter()
            .map(|v| v.1)
            .max()
            .unwrap()
            .floor()
            .to_integer()
            + ray_y;

        if max_x - min_x <= max_y - min_y {
            (min_x..=max_x)
                .filter_map(|x| self.lowest_y(x).map(|y| (x, y)))
                .min_by_key(|&(x, y)| (x + y, x))
        } else {
            (min_y..=max_y)
                .filter_map(|y| self.lowest_x(y).map(|x| (x, y)))
                .min_by_key(|&(x, y)| (x + y, x))
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.first_solution().is_some()
    }

    /// Smallest feasible `y` on the vertical line through `x`.
    fn lowest_y(&self, x: i128) -> Option<i128> {
        let mut lo: Option<i128> = None;
        let mut hi: Option<i128> = None;
        for r in &self.rows {
            let rhs = r.c - r.a * x;
            match r.b.signum() {
                0 if rhs < 0 => return None,
                0 => {}
                1 => {
                    let v = Integer::div_floor(&rhs, &r.b);
                    hi = Some(hi.map_or(v, |h| h.min(v)));
                }
                _ => {
                    let v = Integer::div_ceil(&rhs, &r.b);
                    lo = Some(lo.map_or(v, |l| l.max(v)));
                }
            }
        }
        let lo = lo.expect("y is bounded below");
        match hi {
            Some(h) if h < lo => None,
            _ => Some(lo),
        }
    }

    fn lowest_x(&self, y: i128) -> Option<i128> {
        let swapped = System {
            rows: self
                .rows
                .iter()
                .map(|r| HalfPlane {
                    a: r.b,
                    b: r.a,
                    c: r.c,
                })
                .collect(),
        };
        swapped.lowest_y(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(sys: &System, bound: i128) -> Option<(i128, i128)> {
        let mut best: Option<(i128, i128)> = None;
        for x in 0..=bound {
            for y in 0..=bound {
                if sys.holds(x, y) && best.is_none_or(|(bx, by)| (x + y, x) < (bx + by, bx)) {
                    best = Some((x, y));
                }
            }
        }
        best
    }

    #[test]
    fn empty_strip_between_lattice_lines() {
        // 2x = 2y + 1 has no integer solution.
        let mut sys = System::new(0, 0);
        sys.eq(2, -2, 1);
        assert_eq!(sys.first_solution(), None);
    }

    #[test]
    fn unbounded_region_far_from_origin() {
        let mut sys = System::new(0, 0);
        sys.le(-1, 0, -40).le(-1, 1, 3).le(1, -1, 0);
        assert_eq!(sys.first_solution(), Some((40, 40)));
    }

    #[test]
    fn diagonal_ray_region() {
        // x < y < x + 2 forces y = x + 1.
        let mut sys = System::new(0, 0);
        sys.lt(1, -1, 0).lt(-1, 1, 2);
        assert_eq!(sys.first_solution(), Some((0, 1)));
    }

    #[test]
    fn lower_bounds_are_respected() {
        let mut sys = System::new(3, 5);
        sys.x_at_most(3);
        assert_eq!(sys.first_solution(), Some((3, 5)));
        sys.y_at_most(4);
        assert_eq!(sys.first_solution(), None);
    }

    proptest! {
        #[test]
        fn agrees_with_bounded_enumeration(
            rows in proptest::collection::vec((-3i128..=3, -3i128..=3, -6i128..=6), 1..4),
        ) {
            let mut sys = System::new(0, 0);
            sys.x_at_most(12).y_at_most(12);
            for (a, b, c) in rows {
                sys.le(a, b, c);
            }
            prop_assert_eq!(sys.first_solution(), brute(&sys, 12));
        }

        #[test]
        fn unbounded_minimum_matches_large_box(
            rows in proptest::collection::vec((-3i128..=3, -3i128..=3, -6i128..=6), 1..4),
        ) {
            let mut sys = System::new(0, 0);
            for (a, b, c) in rows {
                sys.le(a, b, c);
            }
            // Coefficients are tiny, so any minimizer lies well inside this box.
            prop_assert_eq!(sys.first_solution(), brute(&sys, 90));
        }
    }
}
