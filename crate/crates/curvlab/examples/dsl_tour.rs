//! The kernel expression DSL: atoms, products, powers, contraction factors.
//!
//! Run with `cargo run --example dsl_tour`.

use curvlab::dsl::{parse_kernel_dsl, pretty_print};
use curvlab::report::{CheckKind, RunConfig, run_checks};

fn main() -> curvlab::Result<()> {
    for src in [
        "szego",
        "szego^2",
        "szego_poly(2)",
        "da(3)",
        "detball2",
        "diag([8,16]; tail=15)",
        "contract(diag([8,16]; tail=15))",
        "szego * diag([1,0.25]; tail=0.25) ^ 0.5",
    ] {
        let spec = parse_kernel_dsl(src)?;
        println!("{src:45} -> {:?}", spec.domain()?);
        assert_eq!(parse_kernel_dsl(&pretty_print(&spec)?)?, spec);
    }

    // Parse errors carry byte positions and expected tokens.
    for bad in ["szego ** 2", "diag([1,2]; tail_expr)", "da(0)", "szego_poly(2) * da(2)"] {
        match parse_kernel_dsl(bad) {
            Err(e) => println!("{bad:45} -> {e}"),
            Ok(_) => unreachable!(),
        }
    }

    // The report layer ties DSL input to check execution (same machinery
    // behind `curvlab check --config <file>`).
    let cfg = RunConfig {
        kernel: "diag([8,16]; tail=15)".into(),
        checks: vec![CheckKind::Contraction, CheckKind::Curvature],
        ..RunConfig::default()
    };
    let report = run_checks(&cfg)?;
    print!("\n{}", report.render_text());
    Ok(())
}
