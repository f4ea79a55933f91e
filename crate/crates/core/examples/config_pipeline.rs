//! Runs a pipeline from a config string, as the CLI does, into a temporary
//! directory and prints the manifest.

use geocontact::experiments::{run_pipeline, Config};

fn main() -> geocontact::Result<()> {
    let cfg = Config::parse(
        "# survival estimate on a small torus\n\
         run.pipeline = estimate_gamma\n\
         run.replicas = 50\n\
         run.seed = 2024\n\
         sim.lambdas = 0.3, 0.4\n\
         sim.volume_cap = 300\n",
    )?;
    let dir = std::env::temp_dir().join("geocontact-example");
    let files = run_pipeline(&cfg, &dir, 2)?;
    for f in &files {
        println!("== {}", f.display());
        print!("{}", std::fs::read_to_string(dir.join(f))?);
    }
    Ok(())
}
