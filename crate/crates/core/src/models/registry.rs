//! Built-in families addressable by string id: `paraboloid`, `flat-cone`,
//! `sphere`, `plane` (the coordinate plane at height `d`) and
//! `rotational:<preset>`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AffineMap, FlatCone, ParaboloidFamily, RotationalModel, SphereFamily, Warping, FLAT_CONE_R_MIN};
use crate::geometry::ChartedMap;
use crate::{Error, Result, Vector};

/// Parameters shared by the family constructors; each family reads what it needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub m: usize,
    pub d: f64,
    pub box_radius: f64,
    pub radius: f64,
    pub center_height: Option<f64>,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self { m: 2, d: 0.1, box_radius: 10.0, radius: 1.0, center_height: None }
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    Paraboloid(ParaboloidFamily),
    FlatCone(FlatCone),
    Sphere(SphereFamily),
    Plane(AffineMap),
    Rotational(RotationalModel),
}

impl Family {
    pub fn from_id(id: &str, params: &FamilyParams) -> Result<Self> {
        match id {
            "paraboloid" => Ok(Self::Paraboloid(ParaboloidFamily::new(params.m, params.d, params.box_radius)?)),
            "flat-cone" => Ok(Self::FlatCone(FlatCone::with_radii(FLAT_CONE_R_MIN, params.box_radius))),
            "sphere" => {
                let h = params.center_height.unwrap_or(3.0 * params.radius);
                Ok(Self::Sphere(SphereFamily::new(params.radius, h)?))
            }
            "plane" => {
                let mut offset = Vector::zeros(params.m + 1);
                offset[params.m] = params.d;
                Ok(Self::Plane(AffineMap::coordinate_plane(params.m, params.m + 1, offset, params.box_radius)))
            }
            other => match other.strip_prefix("rotational:").and_then(Warping::from_preset) {
                Some(w) => Ok(Self::Rotational(RotationalModel::new(params.m, w)?)),
                None => Err(Error::UnknownFamily(other.to_string())),
            },
        }
    }

    pub fn id(&self) -> String {
        match self {
            Self::Paraboloid(_) => "paraboloid".into(),
            Self::FlatCone(_) => "flat-cone".into(),
            Self::Sphere(_) => "sphere".into(),
            Self::Plane(_) => "plane".into(),
            Self::Rotational(r) => format!("rotational:{}", r.sigma.name()),
        }
    }

    /// The charted map, for families that are maps into Euclidean space.
    pub fn map(&self) -> Option<Arc<dyn ChartedMap>> {
        match self {
            Self::Paraboloid(p) => Some(Arc::new(p.clone())),
            Self::FlatCone(c) => Some(Arc::new(c.clone())),
            Self::Sphere(s) => Some(Arc::new(s.clone())),
            Self::Plane(a) => Some(Arc::new(a.clone())),
            Self::Rotational(_) => None,
        }
    }

    /// Vertex used when none is given: the ambient origin.
    pub fn default_vertex(&self) -> Option<Vector> {
        self.map().map(|m| Vector::zeros(m.dim_ambient()))
    }

    /// Axis used when none is given: the last ambient coordinate direction.
    pub fn default_axis(&self) -> Option<Vector> {
        self.map().map(|m| {
            let n = m.dim_ambient();
            let mut v = Vector::zeros(n);
            v[n - 1] = 1.0;
            v
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let p = FamilyParams::default();
        for id in ["paraboloid", "flat-cone", "sphere", "plane", "rotational:hyperbolic"] {
            assert_eq!(Family::from_id(id, &p).unwrap().id(), id);
        }
        assert!(matches!(Family::from_id("torus", &p), Err(Error::UnknownFamily(_))));
        assert!(matches!(Family::from_id("rotational:torus", &p), Err(Error::UnknownFamily(_))));
        assert!(Family::from_id("rotational:euclidean", &p).unwrap().map().is_none());
    }
}
