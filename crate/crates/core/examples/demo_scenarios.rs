//! Writes every built-in scenario as JSON into a directory (default `demos/`).

use cyclic_ev::rmtlab::{demo_names, demo_scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "demos".into());
    std::fs::create_dir_all(&dir)?;
    for name in demo_names() {
        let s = demo_scenario(name).expect("listed demo");
        let path = std::path::Path::new(&dir).join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&s)? + "\n")?;
        println!("{}", path.display());
    }
    Ok(())
}
