//! WebAssembly bindings for a small browser page. Every export takes and
//! returns strings so the page needs no generated TypeScript types.

use niemeier_cusp::cuspform::{self, CuspCoefficients, CuspForm};
use niemeier_cusp::niemeier::{build_matrix, Registry};
use niemeier_cusp::qseries;
use niemeier_cusp::rootsys::RootSystemType;
use niemeier_cusp::subcount::Counter;
use std::sync::OnceLock;
use wasm_bindgen::prelude::*;

/// Largest number of q-expansion terms the page may request.
pub const MAX_TERMS: usize = 2000;

struct State {
    registry: Registry,
    counter: Counter,
    coeffs: CuspCoefficients,
}

fn state() -> Result<&'static State, String> {
    static STATE: OnceLock<Result<State, String>> = OnceLock::new();
    STATE
        .get_or_init(|| {
            let registry = Registry::builtin();
            let counter = Counter::new();
            let coeffs = cuspform::solve(&build_matrix(&registry, &counter)).map_err(|e| e.to_string())?;
            Ok(State {
                registry,
                counter,
                coeffs,
            })
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn parse(s: &str) -> Result<RootSystemType, String> {
    s.parse().map_err(|e| format!("cannot parse `{s}`: {e}"))
}

/// The Fourier coefficient `a(M)` of a root lattice of rank at most 12,
/// normalised so that `a(D12) = 1`.
#[wasm_bindgen]
pub fn coefficient(lattice: &str) -> Result<String, String> {
    let m = parse(lattice)?;
    let s = state()?;
    let form = CuspForm::new(s.coeffs.clone(), &s.registry, &s.counter);
    form.coefficient(&m).map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// The number of root subsystems of `ambient` isomorphic to `x`.
#[wasm_bindgen]
pub fn subsystem_count(x: &str, ambient: &str) -> Result<String, String> {
    let (x, r) = (parse(x)?, parse(ambient)?);
    Ok(niemeier_cusp::subcount::count(&x, &r).to_string())
}

/// `η(8τ)^12·θ(τ)` up to `q^terms`.
#[wasm_bindgen]
pub fn q_expansion(terms: usize) -> Result<String, String> {
    if terms > MAX_TERMS {
        return Err(format!("at most {MAX_TERMS} terms"));
    }
    Ok(qseries::eta8_12_theta(terms).to_string())
}
