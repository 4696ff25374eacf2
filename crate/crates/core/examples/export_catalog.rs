//! Writes every catalog automaton to `<dir>/<name>.json` (default `models`).

use wfa_sva::{catalog, io};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "models".into());
    std::fs::create_dir_all(&dir)?;
    for (name, a) in catalog::all() {
        let doc = io::ModelDocument::new(a).with_name(name, Some("catalog"));
        let path = std::path::Path::new(&dir).join(format!("{name}.json"));
        io::write_document(&path, &doc)?;
        println!("{}", path.display());
    }
    Ok(())
}
