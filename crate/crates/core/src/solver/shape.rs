// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! Input domains and their polygonal discretizations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, inradius, ConvexPolygon, Point, Ridge};
use crate::numerics::ellipse_perimeter;

/// Boundary resolution used when a curved domain is replaced by an
/// inscribed polygon.
pub const CURVED_RESOLUTION: usize = 256;

/// Convex profile `f` of an epigraph `{(x1, x2) : |x2| < r, x1 > f(x2)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// `f(x2) = ln(1 / (1 - (x2/r)^2))`, blowing up at both ends.
    Log,
}

impl Profile {
    pub fn eval(&self, halfwidth: f64, x2: f64) -> f64 {
        match self {
            Profile::Log => {
                let s = x2 / halfwidth;
                if s.abs() >= 1.0 {
                    f64::INFINITY
                } else {
                    -(1.0 - s * s).ln()
                }
            }
        }
    }
}

/// A planar domain, as read from a shape file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
    Disk {
        #[serde(default)]
        center: Point,
        radius: f64,
    },
    Polygon {
        vertices: Vec<Point>,
    },
    /// Axis-aligned, `origin` is the lower-left corner.
    Rectangle {
        width: f64,
        height: f64,
        #[serde(default)]
        origin: Point,
    },
    /// Convex hull of two disks of radius `radius` whose centers lie
    /// `length` apart on a horizontal line through `center`.
    Stadium {
        radius: f64,
        length: f64,
        #[serde(default)]
        center: Point,
    },
    /// Semi-axes `a` (horizontal) and `b` (vertical).
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default)]
        center: Point,
    },
    /// `{x > 0, |y| < halfwidth}`, cut at `x < length` when a length is given.
    Halfstrip {
        halfwidth: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        length: Option<f64>,
    },
    Epigraph {
        halfwidth: f64,
        profile: Profile,
    },
    Union {
        members: Vec<ShapeSpec>,
    },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidShape(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite_point(name: &str, p: Point) -> Result<()> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidShape(format!("{name} must be finite")))
    }
}

impl ShapeSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ShapeSpec::Disk { .. } => "disk",
            ShapeSpec::Polygon { .. } => "polygon",
            ShapeSpec::Rectangle { .. } => "rectangle",
            ShapeSpec::Stadium { .. } => "stadium",
            ShapeSpec::Ellipse { .. } => "ellipse",
            ShapeSpec::Halfstrip { .. } => "halfstrip",
            ShapeSpec::Epigraph { .. } => "epigraph",
            ShapeSpec::Union { .. } => "union",
        }
    }

    /// One-line description used in reports.
    pub fn summary(&self) -> String {
        match self {
            ShapeSpec::Disk { center, radius } => {
                format!("disk r={radius} at ({}, {})", center.x, center.y)
            }
            ShapeSpec::Polygon { vertices } => format!("polygon with {} vertices", vertices.len()),
            ShapeSpec::Rectangle { width, height, .. } => format!("rectangle {width}x{height}"),
            ShapeSpec::Stadium { radius, length, .. } => format!("stadium r={radius} d={length}"),
            ShapeSpec::Ellipse { a, b, .. } => format!("ellipse {a}x{b}"),
            ShapeSpec::Halfstrip { halfwidth, length: Some(l) } => {
                format!("halfstrip w={halfwidth} cut at {l}")
            }
            ShapeSpec::Halfstrip { halfwidth, length: None } => format!("halfstrip w={halfwidth}"),
            ShapeSpec::Epigraph { halfwidth, .. } => format!("epigraph r={halfwidth} log profile"),
            ShapeSpec::Union { members } => format!(
                "union of [{}]",
                members.iter().map(|m| m.summary()).collect::<Vec<_>>().join("; ")
            ),
        }
    }

    /// Checks parameters, convexity and (for unions) pairwise disjointness.
    pub fn validate(&self) -> Result<()> {
        match self {
            ShapeSpec::Disk { center, radius } => {
                finite_point("center", *center)?;
                positive("radius", *radius)
            }
            ShapeSpec::Polygon { vertices } => ConvexPolygon::new(vertices.clone()).map(|_| ()),
            ShapeSpec::Rectangle { width, height, origin } => {
                finite_point("origin", *origin)?;
                positive("width", *width)?;
                positive("height", *height)
            }
            ShapeSpec::Stadium { radius, length, center } => {
                finite_point("center", *center)?;
                positive("radius", *radius)?;
                if !(*length >= 0.0 && length.is_finite()) {
                    return Err(Error::InvalidShape(format!("length must be >= 0, got {length}")));
                }
                Ok(())
            }
            ShapeSpec::Ellipse { a, b, center } => {
                finite_point("center", *center)?;
                positive("a", *a)?;
                positive("b", *b)
            }
            ShapeSpec::Halfstrip { halfwidth, length } => {
                positive("halfwidth", *halfwidth)?;
                if let Some(l) = length {
                    positive("length", *l)?;
                }
                Ok(())
            }
            ShapeSpec::Epigraph { halfwidth, .. } => positive("halfwidth", *halfwidth),
            ShapeSpec::Union { members } => {
                if members.is_empty() {
                    return Err(Error::InvalidShape("union needs at least one member".into()));
                }
                for m in members {
                    if matches!(m, ShapeSpec::Union { .. }) {
                        return Err(Error::InvalidShape("nested unions are not supported".into()));
                    }
                    if !m.is_bounded() {
                        return Err(Error::InvalidShape("union members must be bounded".into()));
                    }
                    m.validate()?;
                }
                for i in 0..members.len() {
                    for j in i + 1..members.len() {
                        if !separated(&members[i], &members[j])? {
                            return Err(Error::InvalidShape(format!(
                                "union members {i} and {j} may overlap"
                            )));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            ShapeSpec::Halfstrip { length, .. } => length.is_some(),
            ShapeSpec::Epigraph { .. } => false,
            ShapeSpec::Union { members } => members.iter().all(|m| m.is_bounded()),
            _ => true,
        }
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self, ShapeSpec::Union { .. })
    }

    /// Exact area; `inf` when unbounded.
    pub fn area(&self) -> f64 {
        match self {
            ShapeSpec::Disk { radius, .. } => PI * radius * radius,
            ShapeSpec::Polygon { vertices } => {
                ConvexPolygon::new(vertices.clone()).map(|p| p.area()).unwrap_or(f64::NAN)
            }
            ShapeSpec::Rectangle { width, height, .. } => width * height,
            ShapeSpec::Stadium { radius, length, .. } => PI * radius * radius + 2.0 * radius * length,
            ShapeSpec::Ellipse { a, b, .. } => PI * a * b,
            ShapeSpec::Halfstrip { halfwidth, length } => {
                length.map_or(f64::INFINITY, |l| 2.0 * halfwidth * l)
            }
            ShapeSpec::Epigraph { .. } => f64::INFINITY,
            ShapeSpec::Union { members } => members.iter().map(|m| m.area()).sum(),
        }
    }

    /// Exact perimeter; `inf` when unbounded.
    pub fn perimeter(&self) -> f64 {
        match self {
            ShapeSpec::Disk { radius, .. } => 2.0 * PI * radius,
            ShapeSpec::Polygon { vertices } => {
                ConvexPolygon::new(vertices.clone()).map(|p| p.perimeter()).unwrap_or(f64::NAN)
            }
            ShapeSpec::Rectangle { width, height, .. } => 2.0 * (width + height),
            ShapeSpec::Stadium { radius, length, .. } => 2.0 * PI * radius + 2.0 * length,
            ShapeSpec::Ellipse { a, b, .. } => ellipse_perimeter(*a, *b),
            ShapeSpec::Halfstrip { halfwidth, length } => {
                length.map_or(f64::INFINITY, |l| 4.0 * halfwidth + 2.0 * l)
            }
            ShapeSpec::Epigraph { .. } => f64::INFINITY,
            ShapeSpec::Union { members } => members.iter().map(|m| m.perimeter()).sum(),
        }
    }

    /// Inscribed convex polygon of a bounded convex domain. Polygonal domains
    /// are returned as they are; curved boundaries are sampled at
    /// `resolution` points.
    pub fn polygonize(&self, resolution: usize) -> Result<ConvexPolygon> {
        self.validate()?;
        let n = resolution.max(8);
        match self {
            ShapeSpec::Disk { center, radius } => ConvexPolygon::regular(n, *center, *radius),
            ShapeSpec::Polygon { vertices } => ConvexPolygon::new(vertices.clone()),
            ShapeSpec::Rectangle { width, height, origin } => {
                ConvexPolygon::rectangle(*origin, *origin + Point::new(*width, *height))
            }
            ShapeSpec::Stadium { radius, length, center } => {
                convex_hull(&stadium_points(*center, *radius, *length, n, 1.0))
            }
            ShapeSpec::Ellipse { a, b, center } => {
                convex_hull(&ellipse_points(*center, *a, *b, n, 1.0))
            }
            ShapeSpec::Halfstrip { halfwidth, length: Some(l) } => {
                ConvexPolygon::rectangle(Point::new(0.0, -halfwidth), Point::new(*l, *halfwidth))
            }
            _ => Err(Error::Precondition(format!(
                "{} is not a bounded convex domain",
                self.kind()
            ))),
        }
    }

    /// The image under `x -> t x`. Epigraphs are not closed under scaling.
    pub fn scaled(&self, t: f64) -> Result<ShapeSpec> {
        positive("scale factor", t)?;
        Ok(match self {
            ShapeSpec::Disk { center, radius } => ShapeSpec::Disk { center: *center * t, radius: radius * t },
            ShapeSpec::Polygon { vertices } => {
                ShapeSpec::Polygon { vertices: vertices.iter().map(|&v| v * t).collect() }
            }
            ShapeSpec::Rectangle { width, height, origin } => {
                ShapeSpec::Rectangle { width: width * t, height: height * t, origin: *origin * t }
            }
            ShapeSpec::Stadium { radius, length, center } => {
                ShapeSpec::Stadium { radius: radius * t, length: length * t, center: *center * t }
            }
            ShapeSpec::Ellipse { a, b, center } => ShapeSpec::Ellipse { a: a * t, b: b * t, center: *center * t },
            ShapeSpec::Halfstrip { halfwidth, length } => {
                ShapeSpec::Halfstrip { halfwidth: halfwidth * t, length: length.map(|l| l * t) }
            }
            ShapeSpec::Epigraph { .. } => {
                return Err(Error::Precondition("a scaled epigraph has a different profile".into()))
            }
            ShapeSpec::Union { members } => {
                ShapeSpec::Union { members: members.iter().map(|m| m.scaled(t)).collect::<Result<_>>()? }
            }
        })
    }

    /// Convex polygon containing a bounded convex domain.
    fn outer_polygon(&self, resolution: usize) -> Result<ConvexPolygon> {
        let n = resolution.max(8);
        let grow = 1.0 / (PI / n as f64).cos();
        match self {
            ShapeSpec::Disk { center, radius } => ConvexPolygon::regular(n, *center, radius * grow),
            ShapeSpec::Stadium { radius, length, center } => {
                convex_hull(&stadium_points(*center, *radius, *length, n, grow))
            }
            ShapeSpec::Ellipse { a, b, center } => {
                convex_hull(&ellipse_points(*center, *a, *b, n, grow))
            }
            _ => self.polygonize(n),
        }
    }

    /// High ridge of a bounded convex domain with its inradius.
    pub fn ridge(&self) -> Result<(f64, Ridge)> {
        match self {
            ShapeSpec::Disk { center, radius } => Ok((*radius, Ridge::Point { at: *center })),
            ShapeSpec::Stadium { radius, length, center } => {
                let h = Point::new(0.5 * length, 0.0);
                let ridge = if *length > 0.0 {
                    Ridge::Segment { from: *center - h, to: *center + h }
                } else {
                    Ridge::Point { at: *center }
                };
                Ok((*radius, ridge))
            }
            // The disk of radius min(a, b) at the center fits; moved along the
            // major axis it pushes (c, +-b) outside.
            ShapeSpec::Ellipse { a, b, center } => Ok((a.min(*b), Ridge::Point { at: *center })),
            _ => {
                let res = inradius(&self.polygonize(CURVED_RESOLUTION)?)?;
                Ok((res.radius, res.ridge))
            }
        }
    }
}

fn stadium_points(center: Point, r: f64, d: f64, n: usize, grow: f64) -> Vec<Point> {
    let half = n / 2;
    let mut pts = Vec::with_capacity(2 * (half + 1));
    for k in 0..=half {
        let t = -0.5 * PI + PI * k as f64 / half as f64;
        pts.push(center + Point::new(0.5 * d, 0.0) + Point::polar(t) * (r * grow));
        pts.push(center - Point::new(0.5 * d, 0.0) - Point::polar(t) * (r * grow));
    }
    pts
}

fn ellipse_points(center: Point, a: f64, b: f64, n: usize, grow: f64) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            center + Point::new(a * grow * t.cos(), b * grow * t.sin())
        })
        .collect()
}

/// Disjointness certificate for two bounded convex members: exact for pairs
/// of disks, a separating axis between outer polygons otherwise.
fn separated(a: &ShapeSpec, b: &ShapeSpec) -> Result<bool> {
    if let (ShapeSpec::Disk { center: c1, radius: r1 }, ShapeSpec::Disk { center: c2, radius: r2 }) =
        (a, b)
    {
        return Ok(c1.distance(*c2) >= r1 + r2);
    }
    let pa = a.outer_polygon(CURVED_RESOLUTION)?;
    let pb = b.outer_polygon(CURVED_RESOLUTION)?;
    Ok(separating_axis(&pa, &pb))
}

fn separating_axis(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    let tol = 1e-12 * (a.diameter() + b.diameter());
    let splits = |p: &ConvexPolygon, other: &ConvexPolygon| {
        p.half_planes().iter().any(|h| {
            let len = h.normal.norm();
            other.vertices().iter().all(|&v| h.value(v) / len >= -tol)
        })
    };
    splits(a, b) || splits(b, a)
}
