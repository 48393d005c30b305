//! C1 cubic spline interpolation over a Delaunay triangulation.
//!
//! Each triangle carries a piecewise-cubic Bezier patch built on a
//! centroid split into three subtriangles. The patch interpolates the
//! vertex values and vertex gradients, joins C1 with its neighbors, and
//! keeps the derivative across each outer edge linear along that edge,
//! which pins down every control ordinate from vertex data alone.
//! Vertex gradients are estimated with weighted least-squares plane fits
//! over the Delaunay neighbors.

use std::collections::HashMap;

use spade::{Point2, PositionInTriangulation, Triangulation};

use super::linear::barycentric;
use super::{canonical_points, check_frame_size, triangulate, SampleTriangulation};
use crate::error::Result;
use crate::frame::GrayFrame;
use crate::mesh::MeshPointSet;
use crate::spatial::BinGrid;

/// Resolves `mesh` onto a `width` x `height` pixel grid with a C1
/// piecewise-cubic surface that interpolates the mesh values.
///
/// Pixels outside the convex hull take the value of the nearest mesh point,
/// as does the whole frame when the mesh cannot be triangulated. Assembled
/// values are clamped to `[0, 255]`.
pub fn interpolate_cubic(mesh: &MeshPointSet, width: usize, height: usize) -> Result<GrayFrame> {
    check_frame_size(width, height)?;
    let points = canonical_points(mesh);
    let nearest = BinGrid::build(mesh, 1.0);
    let tri = triangulate(&points)?;

    let mut values = vec![0.0f64; width * height];
    if tri.num_inner_faces() == 0 {
        for n in 0..height {
            for m in 0..width {
                let v = nearest.value(nearest.nearest(m as f64, n as f64));
                values[n * width + m] = v.clamp(0.0, 255.0);
            }
        }
        return GrayFrame::new(width, height, values);
    }

    let gradients = estimate_gradients(&tri);
    let mut patches: HashMap<usize, CubicPatch> = HashMap::new();

    for n in 0..height {
        for m in 0..width {
            let q = Point2::new(m as f64, n as f64);
            let v = match tri.locate(q) {
                PositionInTriangulation::OnVertex(v) => tri.vertex(v).data().value,
                PositionInTriangulation::OnEdge(e) => {
                    let edge = tri.directed_edge(e);
                    let inner = edge
                        .face()
                        .as_inner()
                        .map(|f| f.fix())
                        .or_else(|| edge.rev().face().as_inner().map(|f| f.fix()));
                    match inner {
                        Some(f) => patch_for(&tri, &gradients, &mut patches, f).eval(q.x, q.y),
                        None => nearest.value(nearest.nearest(q.x, q.y)),
                    }
                }
                PositionInTriangulation::OnFace(f) => {
                    patch_for(&tri, &gradients, &mut patches, f).eval(q.x, q.y)
                }
                PositionInTriangulation::OutsideOfConvexHull(_)
                | PositionInTriangulation::NoTriangulation => {
                    nearest.value(nearest.nearest(q.x, q.y))
                }
            };
            values[n * width + m] = v.clamp(0.0, 255.0);
        }
    }
    GrayFrame::new(width, height, values)
}

/// Returns the cached patch for an inner face, building it on first use.
fn patch_for<'a>(
    tri: &SampleTriangulation,
    gradients: &[(f64, f64)],
    patches: &'a mut HashMap<usize, CubicPatch>,
    face: spade::handles::FixedFaceHandle<spade::handles::InnerTag>,
) -> &'a CubicPatch {
    patches.entry(face.index()).or_insert_with(|| {
        let face = tri.face(face);
        let vs = face.vertices();
        let ps = face.positions();
        CubicPatch::new(
            [(ps[0].x, ps[0].y), (ps[1].x, ps[1].y), (ps[2].x, ps[2].y)],
            [vs[0].data().value, vs[1].data().value, vs[2].data().value],
            [
                gradients[vs[0].fix().index()],
                gradients[vs[1].fix().index()],
                gradients[vs[2].fix().index()],
            ],
        )
    })
}

/// Per-vertex gradient estimates from weighted least-squares plane fits
/// over each vertex's triangulation neighbors.
///
/// Weights are inverse squared distance. Rank-deficient neighborhoods
/// (a single neighbor, or all neighbors collinear with the vertex) get a
/// small ridge term so the solve stays well posed; a vertex with no
/// neighbors gets a zero gradient.
pub(crate) fn estimate_gradients(tri: &SampleTriangulation) -> Vec<(f64, f64)> {
    let mut gradients = vec![(0.0f64, 0.0f64); tri.num_vertices()];
    for vertex in tri.vertices() {
        let p = vertex.position();
        let f = vertex.data().value;
        let (mut sxx, mut sxy, mut syy) = (0.0f64, 0.0f64, 0.0f64);
        let (mut bx, mut by) = (0.0f64, 0.0f64);
        let mut neighbors = 0usize;
        for edge in vertex.out_edges() {
            let other = edge.to();
            let op = other.position();
            let (dx, dy) = (op.x - p.x, op.y - p.y);
            let df = other.data().value - f;
            let w = 1.0 / (dx * dx + dy * dy);
            sxx += w * dx * dx;
            sxy += w * dx * dy;
            syy += w * dy * dy;
            bx += w * dx * df;
            by += w * dy * df;
            neighbors += 1;
        }
        if neighbors == 0 {
            continue;
        }
        let trace = sxx + syy;
        let mut det = sxx * syy - sxy * sxy;
        if det <= 1e-12 * trace * trace {
            let ridge = 1e-9 * trace;
            sxx += ridge;
            syy += ridge;
            det = sxx * syy - sxy * sxy;
        }
        gradients[vertex.fix().index()] =
            ((syy * bx - sxy * by) / det, (sxx * by - sxy * bx) / det);
    }
    gradients
}

/// Cubic Bezier surface over one triangle, split at the centroid into
/// three subtriangles that join C1 internally.
///
/// Interpolates the three vertex values and vertex gradients. Along each
/// triangle edge both the restriction (a Hermite cubic) and the
/// cross-edge derivative (linear between the endpoint gradients) depend
/// only on the shared vertex data, so adjacent patches join C1.
pub(crate) struct CubicPatch {
    v: [(f64, f64); 3],
    f: [f64; 3],
    e: [f64; 3],
    a210: f64,
    a120: f64,
    b210: f64,
    b120: f64,
    c210: f64,
    c120: f64,
    a111: f64,
    b111: f64,
    c111: f64,
    a012: f64,
    b012: f64,
    c012: f64,
    z: f64,
}

impl CubicPatch {
    pub(crate) fn new(v: [(f64, f64); 3], f: [f64; 3], g: [(f64, f64); 3]) -> Self {
        let vc = (
            (v[0].0 + v[1].0 + v[2].0) / 3.0,
            (v[0].1 + v[1].1 + v[2].1) / 3.0,
        );
        let third = |from: (f64, f64), to: (f64, f64), f: f64, g: (f64, f64)| {
            f + (g.0 * (to.0 - from.0) + g.1 * (to.1 - from.1)) / 3.0
        };

        let a210 = third(v[0], v[1], f[0], g[0]);
        let a120 = third(v[1], v[0], f[1], g[1]);
        let b210 = third(v[1], v[2], f[1], g[1]);
        let b120 = third(v[2], v[1], f[2], g[2]);
        let c210 = third(v[2], v[0], f[2], g[2]);
        let c120 = third(v[0], v[2], f[0], g[0]);
        let e = [
            third(v[0], vc, f[0], g[0]),
            third(v[1], vc, f[1], g[1]),
            third(v[2], vc, f[2], g[2]),
        ];

        let a111 = mid_edge_ordinate(v[0], v[1], vc, f[0], f[1], a210, a120, e[0], e[1]);
        let b111 = mid_edge_ordinate(v[1], v[2], vc, f[1], f[2], b210, b120, e[1], e[2]);
        let c111 = mid_edge_ordinate(v[2], v[0], vc, f[2], f[0], c210, c120, e[2], e[0]);

        let a012 = (a111 + b111 + e[1]) / 3.0;
        let b012 = (b111 + c111 + e[2]) / 3.0;
        let c012 = (c111 + a111 + e[0]) / 3.0;
        let z = (a012 + b012 + c012) / 3.0;

        CubicPatch {
            v,
            f,
            e,
            a210,
            a120,
            b210,
            b120,
            c210,
            c120,
            a111,
            b111,
            c111,
            a012,
            b012,
            c012,
            z,
        }
    }

    pub(crate) fn eval(&self, x: f64, y: f64) -> f64 {
        let (t1, t2, t3) = barycentric(self.v[0], self.v[1], self.v[2], (x, y));
        if t3 <= t1 && t3 <= t2 {
            bernstein_cubic(
                t1 - t3,
                t2 - t3,
                3.0 * t3,
                self.f[0],
                self.f[1],
                self.z,
                self.a210,
                self.e[0],
                self.a120,
                self.e[1],
                self.c012,
                self.a012,
                self.a111,
            )
        } else if t1 <= t2 {
            bernstein_cubic(
                t2 - t1,
                t3 - t1,
                3.0 * t1,
                self.f[1],
                self.f[2],
                self.z,
                self.b210,
                self.e[1],
                self.b120,
                self.e[2],
                self.a012,
                self.b012,
                self.b111,
            )
        } else {
            bernstein_cubic(
                t3 - t2,
                t1 - t2,
                3.0 * t2,
                self.f[2],
                self.f[0],
                self.z,
                self.c210,
                self.e[2],
                self.c120,
                self.e[0],
                self.b012,
                self.c012,
                self.c111,
            )
        }
    }
}

/// Solves the control ordinate in the middle of a subtriangle from the
/// requirement that the derivative across the outer edge `(va, vb)` varies
/// linearly along that edge.
///
/// The cross-edge derivative of a cubic patch restricted to an edge is a
/// quadratic with Bezier coefficients `q0`, `q1`, `q2` in the directional
/// coordinates of the edge normal; it is linear exactly when the middle
/// coefficient is the average of the ends, which is solved here for the
/// one unknown ordinate.
fn mid_edge_ordinate(
    va: (f64, f64),
    vb: (f64, f64),
    vc: (f64, f64),
    fa: f64,
    fb: f64,
    r210: f64,
    r120: f64,
    ea: f64,
    eb: f64,
) -> f64 {
    let normal = (-(vb.1 - va.1), vb.0 - va.0);
    let shifted = barycentric(va, vb, vc, (va.0 + normal.0, va.1 + normal.1));
    let (d1, d2, d3) = (shifted.0 - 1.0, shifted.1, shifted.2);
    let q0 = d1 * fa + d2 * r210 + d3 * ea;
    let q2 = d1 * r120 + d2 * fb + d3 * eb;
    (0.5 * (q0 + q2) - d1 * r210 - d2 * r120) / d3
}

/// Evaluates a cubic Bernstein polynomial in barycentric coordinates
/// `(s1, s2, s3)` with corner ordinates `b300`, `b030`, `b003`, edge
/// ordinates `t210`, `t201`, `t120`, `t021`, `t102`, `t012` (index triple
/// names the powers of `s1`, `s2`, `s3`), and center ordinate `t111`.
#[allow(clippy::too_many_arguments)]
fn bernstein_cubic(
    s1: f64,
    s2: f64,
    s3: f64,
    b300: f64,
    b030: f64,
    b003: f64,
    t210: f64,
    t201: f64,
    t120: f64,
    t021: f64,
    t102: f64,
    t012: f64,
    t111: f64,
) -> f64 {
    b300 * s1 * s1 * s1
        + b030 * s2 * s2 * s2
        + b003 * s3 * s3 * s3
        + 3.0
            * (t210 * s1 * s1 * s2
                + t201 * s1 * s1 * s3
                + t120 * s1 * s2 * s2
                + t021 * s2 * s2 * s3
                + t102 * s1 * s3 * s3
                + t012 * s2 * s3 * s3)
        + 6.0 * t111 * s1 * s2 * s3
}
