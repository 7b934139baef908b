//! Planar geometry primitives: points, norms, simulation windows.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A point of the plane, also used as a free vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// The origin `O`.
pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Euclidean norm.
    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Supremum norm.
    pub fn norm_linf(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn arg(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by `angle` (counterclockwise).
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// The vector expressed in the local frame of `frame`: rotated by
    /// `-arg(frame)`, so the radial direction of `frame` maps to `e_x`.
    pub fn in_frame_of(self, frame: Point) -> Point {
        let r = frame.norm();
        if r == 0.0 {
            return self;
        }
        let c = frame.x / r;
        let s = frame.y / r;
        Point::new(c * self.x + s * self.y, -s * self.x + c * self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// Norm used for construction costs and radial levels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    #[default]
    L2,
    Linf,
}

impl Norm {
    pub fn len(self, p: Point) -> f64 {
        match self {
            Norm::L2 => p.norm(),
            Norm::Linf => p.norm_linf(),
        }
    }

    pub fn dist(self, a: Point, b: Point) -> f64 {
        self.len(a - b)
    }

    /// Radius of the smallest Euclidean ball containing the unit ball of
    /// this norm; used to certify that a norm ball fits inside a window.
    pub fn l2_circumradius(self) -> f64 {
        match self {
            Norm::L2 => 1.0,
            Norm::Linf => std::f64::consts::SQRT_2,
        }
    }
}

/// Simulation window. Samples live inside it; statistics are taken in a
/// guarded sub-region to suppress boundary bias.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "shape")]
pub enum Window {
    Disk { radius: f64 },
    Rect { half_width: f64, half_height: f64 },
}

impl Window {
    pub fn disk(radius: f64) -> Self {
        Window::Disk { radius }
    }

    pub fn contains(&self, p: Point) -> bool {
        match *self {
            Window::Disk { radius } => p.norm() <= radius,
            Window::Rect {
                half_width,
                half_height,
            } => p.x.abs() <= half_width && p.y.abs() <= half_height,
        }
    }

    /// Whether the closed Euclidean ball `B(c, r)` lies inside the window.
    pub fn contains_ball(&self, c: Point, r: f64) -> bool {
        match *self {
            Window::Disk { radius } => c.norm() + r <= radius,
            Window::Rect {
                half_width,
                half_height,
            } => c.x.abs() + r <= half_width && c.y.abs() + r <= half_height,
        }
    }

    /// Half extents of the bounding box, for grid construction.
    pub fn half_extents(&self) -> (f64, f64) {
        match *self {
            Window::Disk { radius } => (radius, radius),
            Window::Rect {
                half_width,
                half_height,
            } => (half_width, half_height),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_rotation_maps_radial_to_ex() {
        let v = Point::new(3.0, 4.0);
        let u = v.in_frame_of(v);
        assert!((u.x - 5.0).abs() < 1e-12);
        assert!(u.y.abs() < 1e-12);
    }

    #[test]
    fn rotate_quarter_turn() {
        let p = Point::new(1.0, 0.0).rotate(std::f64::consts::FRAC_PI_2);
        assert!(p.x.abs() < 1e-15);
        assert!((p.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn linf_norm_and_circumradius() {
        assert_eq!(Norm::Linf.len(Point::new(-2.0, 1.0)), 2.0);
        assert!(Window::disk(2.0).contains_ball(Point::new(1.0, 0.0), 1.0));
        assert!(!Window::disk(2.0).contains_ball(Point::new(1.0, 0.0), 1.0 + 1e-12));
    }
}
