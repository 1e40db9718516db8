//! Command implementations and report types behind the `bmult` binary.

pub mod report;
pub mod run;

use bmult_core::cocycle::DEFAULT_ORACLE_BOUND;
use bmult_core::pcgroup::{DEFAULT_MAX_ORDER, MAX_ORDER_ENV};
use clap::{Args, ValueEnum};

#[derive(Args, Debug, Clone)]
pub struct MethodOptions {
    #[arg(long, value_enum, default_value_t = Method::Exterior)]
    pub method: Method,
    /// Tail exponent `L` for the covering extension (default: twice the
    /// largest prime exponent of |G|).
    #[arg(long)]
    pub tail_exponent: Option<u32>,
    #[arg(long)]
    pub json: bool,
    /// Largest group order accepted by the cocycle oracle.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    pub oracle_bound: u128,
    /// Largest group order that is enumerated element by element.
    #[arg(long, env = MAX_ORDER_ENV, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: u128,
    /// Also intersect over bicyclic subgroups and report whether it agrees.
    #[arg(long)]
    pub bicyclic: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exterior,
    Cocycle,
    Both,
}

