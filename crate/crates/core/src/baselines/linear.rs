//! Piecewise-linear interpolation over a Delaunay triangulation.

use spade::{Point2, PositionInTriangulation, Triangulation};

use super::{canonical_points, check_frame_size, triangulate};
use crate::error::Result;
use crate::frame::GrayFrame;
use crate::mesh::MeshPointSet;
use crate::spatial::BinGrid;

/// Resolves `mesh` onto a `width` x `height` pixel grid with barycentric
/// interpolation inside each Delaunay triangle.
///
/// Pixels outside the convex hull take the value of the nearest mesh point,
/// as does the whole frame when the mesh is too degenerate to triangulate
/// (fewer than three distinct points, or all points collinear). Assembled
/// values are clamped to `[0, 255]`.
pub fn interpolate_linear(mesh: &MeshPointSet, width: usize, height: usize) -> Result<GrayFrame> {
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

    for n in 0..height {
        for m in 0..width {
            let q = Point2::new(m as f64, n as f64);
            let v = match tri.locate(q) {
                PositionInTriangulation::OnVertex(v) => tri.vertex(v).data().value,
                PositionInTriangulation::OnEdge(e) => {
                    let edge = tri.directed_edge(e);
                    let [a, b] = edge.vertices();
                    let (pa, pb) = (a.position(), b.position());
                    let (dx, dy) = (pb.x - pa.x, pb.y - pa.y);
                    let len2 = dx * dx + dy * dy;
                    let t = (((q.x - pa.x) * dx + (q.y - pa.y) * dy) / len2).clamp(0.0, 1.0);
                    (1.0 - t) * a.data().value + t * b.data().value
                }
                PositionInTriangulation::OnFace(f) => {
                    let face = tri.face(f);
                    let vs = face.vertices();
                    let ps = face.positions();
                    let (l1, l2, l3) = barycentric(
                        (ps[0].x, ps[0].y),
                        (ps[1].x, ps[1].y),
                        (ps[2].x, ps[2].y),
                        (q.x, q.y),
                    );
                    l1 * vs[0].data().value + l2 * vs[1].data().value + l3 * vs[2].data().value
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

/// Barycentric coordinates of `q` with respect to triangle `(p1, p2, p3)`.
pub(crate) fn barycentric(
    p1: (f64, f64),
    p2: (f64, f64),
    p3: (f64, f64),
    q: (f64, f64),
) -> (f64, f64, f64) {
    let det = (p2.0 - p1.0) * (p3.1 - p1.1) - (p3.0 - p1.0) * (p2.1 - p1.1);
    let l2 = ((q.0 - p1.0) * (p3.1 - p1.1) - (p3.0 - p1.0) * (q.1 - p1.1)) / det;
    let l3 = ((p2.0 - p1.0) * (q.1 - p1.1) - (q.0 - p1.0) * (p2.1 - p1.1)) / det;
    (1.0 - l2 - l3, l2, l3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_mesh<F: Fn(f64, f64) -> f64>(w: usize, h: usize, f: F) -> MeshPointSet {
        let mut pts = Vec::new();
        for y in 0..h {
            for x in 0..w {
                pts.push((x as f64, y as f64, f(x as f64, y as f64)));
            }
        }
        MeshPointSet::from_points(&pts).unwrap()
    }

    #[test]
    fn barycentric_recovers_vertices_and_centroid() {
        let (p1, p2, p3) = ((0.0, 0.0), (4.0, 0.5), (1.0, 3.0));
        assert_eq!(barycentric(p1, p2, p3, p1), (1.0, 0.0, 0.0));
        let (l1, l2, l3) = barycentric(p1, p2, p3, (5.0 / 3.0, 3.5 / 3.0));
        assert!((l1 - 1.0 / 3.0).abs() < 1e-12, "centroid l1 = {l1}");
        assert!((l2 - 1.0 / 3.0).abs() < 1e-12, "centroid l2 = {l2}");
        assert!((l3 - 1.0 / 3.0).abs() < 1e-12, "centroid l3 = {l3}");
    }

    #[test]
    fn reproduces_affine_fields_exactly_inside_hull() {
        let mesh = MeshPointSet::from_points(&[
            (0.0, 0.0, 10.0),
            (9.0, 0.0, 10.0 + 9.0 * 2.0),
            (0.0, 9.0, 10.0 + 9.0 * 3.0),
            (9.0, 9.0, 10.0 + 9.0 * 2.0 + 9.0 * 3.0),
            (4.3, 5.1, 10.0 + 4.3 * 2.0 + 5.1 * 3.0),
        ])
        .unwrap();
        let frame = interpolate_linear(&mesh, 10, 10).unwrap();
        for n in 0..10 {
            for m in 0..10 {
                let want = 10.0 + m as f64 * 2.0 + n as f64 * 3.0;
                let got = frame.at(m, n);
                assert!(
                    (got - want).abs() < 1e-9,
                    "affine field at ({m}, {n}): got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn interpolates_exactly_at_mesh_points() {
        let mesh = MeshPointSet::from_points(&[
            (1.0, 1.0, 50.0),
            (6.0, 2.0, 120.0),
            (3.0, 6.0, 200.0),
            (7.0, 7.0, 30.0),
        ])
        .unwrap();
        let frame = interpolate_linear(&mesh, 8, 8).unwrap();
        assert_eq!(frame.at(1, 1), 50.0);
        assert_eq!(frame.at(6, 2), 120.0);
        assert_eq!(frame.at(3, 6), 200.0);
        assert_eq!(frame.at(7, 7), 30.0);
    }

    #[test]
    fn pixels_outside_hull_take_nearest_value() {
        let mesh =
            MeshPointSet::from_points(&[(3.0, 3.0, 100.0), (5.0, 3.0, 140.0), (4.0, 5.0, 180.0)])
                .unwrap();
        let frame = interpolate_linear(&mesh, 9, 9).unwrap();
        assert_eq!(
            frame.at(0, 0),
            100.0,
            "corner pixel snaps to nearest mesh point"
        );
        assert_eq!(frame.at(8, 0), 140.0);
        assert_eq!(frame.at(4, 8), 180.0);
    }

    #[test]
    fn collinear_mesh_falls_back_to_nearest() {
        let mesh =
            MeshPointSet::from_points(&[(0.0, 2.0, 10.0), (3.0, 2.0, 90.0), (6.0, 2.0, 250.0)])
                .unwrap();
        let frame = interpolate_linear(&mesh, 7, 5).unwrap();
        assert_eq!(frame.at(0, 0), 10.0);
        assert_eq!(frame.at(3, 4), 90.0);
        assert_eq!(frame.at(6, 2), 250.0);
    }

    #[test]
    fn output_is_clamped_to_byte_range() {
        let mesh =
            MeshPointSet::from_points(&[(0.0, 0.0, -40.0), (5.0, 0.0, 300.0), (2.0, 5.0, 128.0)])
                .unwrap();
        let frame = interpolate_linear(&mesh, 6, 6).unwrap();
        for n in 0..6 {
            for m in 0..6 {
                let v = frame.at(m, n);
                assert!(
                    (0.0..=255.0).contains(&v),
                    "clamped value at ({m}, {n}): {v}"
                );
            }
        }
        assert_eq!(frame.at(0, 0), 0.0);
        assert_eq!(frame.at(5, 0), 255.0);
    }

    #[test]
    fn matches_smooth_field_closely_on_dense_grid() {
        let f = |x: f64, y: f64| 128.0 + 40.0 * (0.15 * x).sin() + 30.0 * (0.2 * y).cos();
        let mesh = grid_mesh(12, 12, f);
        let frame = interpolate_linear(&mesh, 12, 12).unwrap();
        for n in 0..12 {
            for m in 0..12 {
                let got = frame.at(m, n);
                let want = f(m as f64, n as f64);
                assert!(
                    (got - want).abs() < 1e-9,
                    "grid sample at ({m}, {n}): got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn result_does_not_depend_on_point_order() {
        let mut pts = Vec::new();
        for y in 0..9 {
            for x in 0..9 {
                let v = 100.0 + (x as f64 * 13.7).sin() * 50.0 + (y as f64 * 7.3).cos() * 40.0;
                pts.push((x as f64 * 1.13, y as f64 * 0.97, v));
            }
        }
        let a = interpolate_linear(&MeshPointSet::from_points(&pts).unwrap(), 10, 9).unwrap();
        pts.reverse();
        pts.swap(3, 40);
        pts.swap(11, 70);
        let b = interpolate_linear(&MeshPointSet::from_points(&pts).unwrap(), 10, 9).unwrap();
        assert_eq!(
            a.values(),
            b.values(),
            "interpolation must be order independent"
        );
    }
}
