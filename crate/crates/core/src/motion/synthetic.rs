//! Analytically defined displacement fields for self-contained tests.

use serde::{Deserialize, Serialize};

use crate::flow::MotionField;

/// Ground-truth flow generators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SyntheticFlowSpec {
    /// Every pixel moves by the same `(dx, dy)`.
    GlobalTranslation { dx: f64, dy: f64 },
    /// Pixel `(m, n)` maps to `(a11·m + a12·n + tx, a21·m + a22·n + ty)`;
    /// the displacement is the difference to the source position.
    Affine {
        a11: f64,
        a12: f64,
        a21: f64,
        a22: f64,
        tx: f64,
        ty: f64,
    },
}

/// Evaluates a flow spec on a `width x height` grid.
pub fn synthesize_flow(spec: &SyntheticFlowSpec, width: usize, height: usize) -> MotionField {
    let n_pixels = width * height;
    match *spec {
        SyntheticFlowSpec::GlobalTranslation { dx, dy } => {
            MotionField::new(width, height, vec![dx; n_pixels], vec![dy; n_pixels])
                .expect("constant components are finite")
        }
        SyntheticFlowSpec::Affine {
            a11,
            a12,
            a21,
            a22,
            tx,
            ty,
        } => {
            let mut dm = Vec::with_capacity(n_pixels);
            let mut dn = Vec::with_capacity(n_pixels);
            for n in 0..height {
                for m in 0..width {
                    let (mf, nf) = (m as f64, n as f64);
                    dm.push(a11 * mf + a12 * nf + tx - mf);
                    dn.push(a21 * mf + a22 * nf + ty - nf);
                }
            }
            MotionField::new(width, height, dm, dn)
                .expect("affine images of finite inputs are finite")
        }
    }
}
