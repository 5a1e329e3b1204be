//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Expected values come from the brute-force routines in `oracle.rs` or
//! from closed formulas written out here; the library is only the thing
//! under test.

mod arith;
mod geometry;
mod oracle;

use std::error::Error;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

pub type Outcome = Result<String, Box<dyn Error>>;

type Check = (&'static str, fn() -> Outcome);

#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+).into());
        }
    }};
}

fn main() {
    let checks: [Check; 11] = [
        ("spectra", geometry::spectra),
        ("structure sheaf", geometry::structure_sheaf),
        ("Spec/Hom duality", geometry::duality),
        ("projective line", geometry::projective_line),
        ("Picard groups", geometry::picard_groups),
        ("GL_n", geometry::general_linear),
        ("Z-adjunction", arith::adjunction),
        ("fibre products", arith::fibre_products),
        ("zeta functions", arith::zeta_functions),
        ("module layer", arith::module_layer),
        ("polynomiality probe", arith::polynomiality),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}").into())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        checks.len() - failed,
        checks.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
