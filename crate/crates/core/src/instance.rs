//! JSON instance schema shared by the command line and the FFI layer.
//!
//! ```json
//! {"kind": "dwell", "L": "2", "l": "1", "T": "4", "N": 4, "variant": "rt"}
//! ```
//!
//! Kinds: `bv_relaxed`, `bv_exact` (parity picks the even or odd model),
//! `bv_exact_even`, `bv_exact_odd`, `dwell`, `linearized`, `dwell_in_z`.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulations::{
    build_bv_exact, build_bv_relaxed, build_dwell, build_dwell_in_z, build_linearized, DwellVariant,
    SwitchConstraints,
};
use crate::oracle::{enum_bv, enum_dwell, enum_uab, BinaryPattern};
use crate::ratlp::LpModel;
use crate::rational::{serde_rational, serde_rational_matrix, serde_rational_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Instance {
    BvRelaxed {
        sigma: usize,
        #[serde(rename = "T", with = "serde_rational")]
        horizon: Rational,
        #[serde(rename = "N")]
        cells: usize,
    },
    BvExact {
        sigma: usize,
        #[serde(rename = "T", with = "serde_rational")]
        horizon: Rational,
        #[serde(rename = "N")]
        cells: usize,
    },
    BvExactEven {
        sigma: usize,
        #[serde(rename = "T", with = "serde_rational")]
        horizon: Rational,
        #[serde(rename = "N")]
        cells: usize,
    },
    BvExactOdd {
        sigma: usize,
        #[serde(rename = "T", with = "serde_rational")]
        horizon: Rational,
        #[serde(rename = "N")]
        cells: usize,
    },
    Dwell {
        #[serde(rename = "L", with = "serde_rational")]
        up: Rational,
        #[serde(rename = "l", with = "serde_rational")]
        down: Rational,
        #[serde(rename = "T", with = "serde_rational")]
        horizon: Rational,
        #[serde(rename = "N")]
        cells: usize,
        #[serde(default = "default_variant")]
        variant: DwellVariant,
    },
    Linearized {
        #[serde(rename = "A", with = "serde_rational_matrix")]
        a: Vec<Vec<Rational>>,
        #[serde(with = "serde_rational_vec")]
        b: Vec<Rational>,
        sigma: usize,
        #[serde(rename = "T", with = "serde_rational")]
        horizon: Rational,
        #[serde(rename = "N")]
        cells: usize,
        #[serde(default = "default_relaxed")]
        relaxed: bool,
    },
    DwellInZ {
        #[serde(rename = "L", with = "serde_rational")]
        up: Rational,
        #[serde(rename = "l", with = "serde_rational")]
        down: Rational,
        sigma: usize,
        #[serde(rename = "T", with = "serde_rational")]
        horizon: Rational,
        #[serde(rename = "N")]
        cells: usize,
    },
}

fn default_variant() -> DwellVariant {
    DwellVariant::Rt
}

fn default_relaxed() -> bool {
    true
}

/// Whether the model's projection is claimed to be the convex hull of the
/// oracle class, or only to contain it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullClaim {
    Exact,
    Contains,
}

impl Instance {
    /// Parse an instance; a reduction bundle's `provenance` member is ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text)?;
        if let Some(map) = value.as_object_mut() {
            map.remove("provenance");
        }
        Ok(serde_json::from_value(value)?)
    }

    pub fn horizon(&self) -> &Rational {
        match self {
            Instance::BvRelaxed { horizon, .. }
            | Instance::BvExact { horizon, .. }
            | Instance::BvExactEven { horizon, .. }
            | Instance::BvExactOdd { horizon, .. }
            | Instance::Dwell { horizon, .. }
            | Instance::Linearized { horizon, .. }
            | Instance::DwellInZ { horizon, .. } => horizon,
        }
    }

    pub fn cells(&self) -> usize {
        match self {
            Instance::BvRelaxed { cells, .. }
            | Instance::BvExact { cells, .. }
            | Instance::BvExactEven { cells, .. }
            | Instance::BvExactOdd { cells, .. }
            | Instance::Dwell { cells, .. }
            | Instance::Linearized { cells, .. }
            | Instance::DwellInZ { cells, .. } => *cells,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::BvRelaxed { .. } => "bv_relaxed",
            Instance::BvExact { .. } => "bv_exact",
            Instance::BvExactEven { .. } => "bv_exact_even",
            Instance::BvExactOdd { .. } => "bv_exact_odd",
            Instance::Dwell { .. } => "dwell",
            Instance::Linearized { .. } => "linearized",
            Instance::DwellInZ { .. } => "dwell_in_z",
        }
    }

    pub fn build(&self) -> Result<LpModel> {
        match self {
            Instance::BvRelaxed { sigma, horizon, cells } => build_bv_relaxed(*sigma, horizon, *cells),
            Instance::BvExact { sigma, horizon, cells } => build_bv_exact(*sigma, horizon, *cells),
            Instance::BvExactEven { sigma, horizon, cells } => {
                if sigma % 2 != 0 {
                    return Err(Error::domain(format!("bv_exact_even needs an even σ, got {sigma}")));
                }
                build_bv_exact(*sigma, horizon, *cells)
            }
            Instance::BvExactOdd { sigma, horizon, cells } => {
                if sigma % 2 != 1 {
                    return Err(Error::domain(format!("bv_exact_odd needs an odd σ, got {sigma}")));
                }
                build_bv_exact(*sigma, horizon, *cells)
            }
            Instance::Dwell { up, down, horizon, cells, variant } => build_dwell(up, down, horizon, *cells, *variant),
            Instance::Linearized { a, b, sigma, horizon, cells, relaxed } => {
                build_linearized(&SwitchConstraints::new(a.clone(), b.clone(), *sigma)?, horizon, *cells, *relaxed)
            }
            Instance::DwellInZ { up, down, sigma, horizon, cells } => {
                build_dwell_in_z(up, down, *sigma, horizon, *cells)
            }
        }
    }

    /// The binary class the model describes, by brute force.
    pub fn oracle_class(&self, caps: &Caps) -> Result<Vec<BinaryPattern>> {
        match self {
            Instance::BvRelaxed { sigma, horizon, cells }
            | Instance::BvExact { sigma, horizon, cells }
            | Instance::BvExactEven { sigma, horizon, cells }
            | Instance::BvExactOdd { sigma, horizon, cells } => enum_bv(*sigma, horizon, *cells, caps),
            Instance::Dwell { up, down, horizon, cells, .. } => enum_dwell(up, down, horizon, *cells, caps),
            Instance::Linearized { a, b, sigma, horizon, cells, .. } => {
                enum_uab(&SwitchConstraints::new(a.clone(), b.clone(), *sigma)?, horizon, *cells, caps)
            }
            Instance::DwellInZ { up, down, sigma, horizon, cells } => Ok(enum_dwell(up, down, horizon, *cells, caps)?
                .into_iter()
                .filter(|u| u.switches() <= *sigma)
                .collect()),
        }
    }

    pub fn hull_claim(&self) -> HullClaim {
        match self {
            Instance::BvExact { .. } | Instance::BvExactEven { .. } | Instance::BvExactOdd { .. } | Instance::Dwell { .. } => {
                HullClaim::Exact
            }
            _ => HullClaim::Contains,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn parses_each_kind() {
        let cases = [
            r#"{"kind":"bv_relaxed","sigma":2,"T":"2","N":2}"#,
            r#"{"kind":"bv_exact","sigma":2,"T":"4","N":4}"#,
            r#"{"kind":"bv_exact_odd","sigma":1,"T":"1/2","N":2}"#,
            r#"{"kind":"dwell","L":"2","l":"1","T":"4","N":4,"variant":"rt-with-boundary"}"#,
            r#"{"kind":"linearized","A":[["1","-1"]],"b":["-2"],"sigma":2,"T":"4","N":4,"relaxed":true}"#,
            r#"{"kind":"dwell_in_z","L":"2","l":"0","sigma":2,"T":"4","N":4}"#,
        ];
        for text in cases {
            let inst = Instance::from_json(text).unwrap();
            inst.build().unwrap();
            let back = serde_json::to_string(&inst).unwrap();
            assert_eq!(Instance::from_json(&back).unwrap(), inst);
        }
    }

    #[test]
    fn counts_match_builders() {
        let inst = Instance::from_json(r#"{"kind":"linearized","A":[["1","0"]],"b":["1"],"sigma":2,"T":"4","N":4}"#).unwrap();
        assert_eq!(inst.build().unwrap().num_vars(), 12);
        assert_eq!(inst.horizon(), &int(4));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Instance::from_json(r#"{"kind":"bv_exact","sigma":2,"T":0.5,"N":2}"#).is_err());
        assert!(Instance::from_json(r#"{"kind":"nope","T":"1","N":1}"#).is_err());
        assert!(Instance::from_json(r#"{"kind":"bv_exact","sigma":2,"T":"1","N":1,"extra":1}"#).is_err());
        let even = Instance::from_json(r#"{"kind":"bv_exact_even","sigma":3,"T":"1","N":1}"#).unwrap();
        assert!(matches!(even.build(), Err(Error::Domain(_))));
        let dwell = Instance::from_json(r#"{"kind":"dwell","L":"2","l":"1","T":"4","N":3}"#).unwrap();
        assert!(matches!(dwell.build(), Err(Error::GridIncompatible { factor: 4, .. })));
    }
}
