//! The Frey curve attached to `F(u,v) = z^p` for a binary cubic form `F`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::family::{FreyFamily, Validity};
use crate::ellcurve::WeierstrassModel;
use crate::exactmath::{binary_form_disc, rat_int, BiPolyQ, PolyQ};
use crate::{Error, Result};

/// `H`, `G` and `E'_{u,v} : Y^2 = X^3 - 3H X + G` for a cubic form `F`.
#[derive(Clone, Debug)]
pub struct BdFamily {
    pub f: BiPolyQ,
    pub h: BiPolyQ,
    pub g: BiPolyQ,
    pub disc_f: BigInt,
}

/// `H = -(F_uu F_vv - F_uv^2)/4` and `G = F_u H_v - F_v H_u`.
pub fn bd_recipe(f: &BiPolyQ) -> Result<BdFamily> {
    let disc_f = binary_form_disc(f)?;
    let (fu, fv) = (f.du(), f.dv());
    let (fuu, fuv, fvv) = (fu.du(), fu.dv(), fv.dv());
    let hess = &(&fuu * &fvv) - &(&fuv * &fuv);
    let h = hess.scale(&crate::exactmath::rat(-1, 4));
    let g = &(&fu * &h.dv()) - &(&fv * &h.du());
    Ok(BdFamily { f: f.clone(), h, g, disc_f })
}

impl BdFamily {
    pub fn a4(&self) -> BiPolyQ {
        self.h.scale(&rat_int(-3))
    }

    /// `-16 (4 A^3 + 27 B^2)` with `A = -3H`, `B = G`.
    pub fn disc(&self) -> BiPolyQ {
        let a = self.a4();
        let cube = &(&a * &a) * &a;
        let sq = &self.g * &self.g;
        (&cube.scale(&rat_int(4)) + &sq.scale(&rat_int(27))).scale(&rat_int(-16))
    }

    /// Whether `disc(E') = 2^4 3^6 disc(F) F^2` holds identically.
    pub fn disc_identity_holds(&self) -> bool {
        let rhs = (&self.f * &self.f).scale(&rat_int(self.disc_f.clone() * 16 * 729));
        (&self.disc() - &rhs).is_zero()
    }

    pub fn model_at(&self, u: &BigInt, v: &BigInt) -> WeierstrassModel {
        let z = crate::exactmath::Rational::zero();
        WeierstrassModel::new(z.clone(), z.clone(), z, self.a4().eval_int(u, v), self.g.eval_int(u, v))
    }

    /// `E'_{x^2, 1}` as a family in `x`.
    pub fn family_x2(&self) -> FreyFamily {
        let u = PolyQ::x().pow(2);
        let v = PolyQ::one();
        let z = PolyQ::zero();
        FreyFamily {
            name: "E'_{x^2,1}".into(),
            a: [z.clone(), z.clone(), z, self.a4().substitute(&u, &v), self.g.substitute(&u, &v)],
            validity: Validity::Any,
        }
    }
}

/// Guard used by callers that accept arbitrary forms.
pub fn require_cubic(f: &BiPolyQ) -> Result<()> {
    match f.homogeneous_degree() {
        Some(3) => Ok(()),
        _ => Err(Error::InvalidArgument("expected a homogeneous cubic form".into())),
    }
}
