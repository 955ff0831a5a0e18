//! Hard size limits for the exhaustive referees.

use crate::error::{Error, Result};

pub const ENV_MAX_SIGMA: &str = "SWITCHFORM_MAX_SIGMA";
pub const ENV_MAX_CELLS: &str = "SWITCHFORM_MAX_CELLS";
pub const ENV_MAX_UAB_CELLS: &str = "SWITCHFORM_MAX_UAB_CELLS";
pub const ENV_MAX_GRAPH_VERTICES: &str = "SWITCHFORM_MAX_GRAPH_VERTICES";
pub const ENV_MAX_GAMMA: &str = "SWITCHFORM_MAX_GAMMA";

/// Limits beyond which enumeration refuses to run and returns
/// [`Error::Capability`] instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Switching budget for BV and switching-point classes.
    pub max_sigma: usize,
    /// Grid cells for BV and dwell-time enumeration.
    pub max_cells: usize,
    /// Grid cells for switching-point (`U(A,b)`) enumeration.
    pub max_uab_cells: usize,
    /// Vertices in a graph handed to the vertex-cover referees.
    pub max_graph_vertices: usize,
    /// Denominator of the fractional vertex-cover grid.
    pub max_gamma: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_sigma: 8,
            max_cells: 20,
            max_uab_cells: 8,
            max_graph_vertices: 20,
            max_gamma: 16,
        }
    }
}

impl Caps {
    /// Defaults overridden by any `SWITCHFORM_MAX_*` environment variables.
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps::default();
        let fields: [(&str, &mut usize); 5] = [
            (ENV_MAX_SIGMA, &mut caps.max_sigma),
            (ENV_MAX_CELLS, &mut caps.max_cells),
            (ENV_MAX_UAB_CELLS, &mut caps.max_uab_cells),
            (ENV_MAX_GRAPH_VERTICES, &mut caps.max_graph_vertices),
            (ENV_MAX_GAMMA, &mut caps.max_gamma),
        ];
        for (name, slot) in fields {
            if let Ok(text) = std::env::var(name) {
                *slot = text
                    .trim()
                    .parse()
                    .map_err(|_| Error::malformed(format!("{name}={text:?} is not a count")))?;
            }
        }
        Ok(caps)
    }

    pub(crate) fn check(what: &str, value: usize, cap: usize) -> Result<()> {
        if value > cap {
            Err(Error::Capability(format!("{what} = {value} exceeds cap {cap}")))
        } else {
            Ok(())
        }
    }
}
