//! `aqaw table`: grids of weights, recurrence coefficients and convergents.

use aqaw_core::aqaw::{coefficient_table, coefficients};
use aqaw_core::cf::convergents;
use aqaw_core::spectral::{quadrature_abscissae, weight_density, WeightTable};
use aqaw_core::{Error, C64};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    Weight,
    Coefficients,
    Convergents,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableArgs {
    /// Interior nodes of the weight grid.
    pub grid_n: usize,
    /// Largest index of the coefficient table.
    pub n_max: usize,
    /// Number of convergents.
    pub depth: usize,
    pub z: C64,
}

impl Default for TableArgs {
    fn default() -> Self {
        TableArgs { grid_n: 101, n_max: 10, depth: 50, z: C64::new(2.0, 0.0) }
    }
}

pub fn cmd_table(kind: TableKind, run: &RunConfig, args: &TableArgs, serial: bool) -> Result<Table, CliError> {
    let p = &run.params;
    let tol = &run.tolerance;
    match kind {
        TableKind::Weight => {
            if args.grid_n == 0 {
                return Err(CliError::Argument("grid_n must be at least 1".into()));
            }
            let (nodes, density) = if serial {
                let w = WeightTable::build(p, args.grid_n + 1, tol)?;
                (w.nodes, w.density)
            } else {
                let mut nodes = quadrature_abscissae(args.grid_n + 1);
                nodes.reverse();
                let density =
                    nodes.par_iter().map(|&x| weight_density(p, x, tol)).collect::<Result<Vec<_>, Error>>()?;
                (nodes, density)
            };
            let mut t = Table::new(vec!["x", "density"]);
            for (x, d) in nodes.into_iter().zip(density) {
                t.push(vec![Cell::Float(x), Cell::Float(d)]);
            }
            Ok(t)
        }
        TableKind::Coefficients => {
            let mut t = Table::new(vec!["n", "A_re", "A_im", "B_re", "B_im", "a_re", "a_im", "b2_re", "b2_im"]);
            for c in coefficient_table(p, args.n_max)? {
                t.push(vec![
                    Cell::Int(c.n),
                    Cell::Float(c.a_upper.re),
                    Cell::Float(c.a_upper.im),
                    Cell::Float(c.b_upper.re),
                    Cell::Float(c.b_upper.im),
                    Cell::Float(c.a.re),
                    Cell::Float(c.a.im),
                    Cell::Float(c.b2.re),
                    Cell::Float(c.b2.im),
                ]);
            }
            Ok(t)
        }
        TableKind::Convergents => {
            if args.depth == 0 {
                return Err(CliError::Argument("depth must be at least 1".into()));
            }
            let cs = convergents(p, args.z, args.depth, &run.cf)?;
            let mut prev = args.z - coefficients(p, 0)?.a;
            let mut t = Table::new(vec!["k", "re", "im", "delta"]);
            for (k, c) in cs.into_iter().enumerate() {
                t.push(vec![
                    Cell::Int(k as i64 + 1),
                    Cell::Float(c.re),
                    Cell::Float(c.im),
                    Cell::Float((c - prev).norm()),
                ]);
                prev = c;
            }
            Ok(t)
        }
    }
}
