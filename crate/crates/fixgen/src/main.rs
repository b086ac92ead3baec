use std::path::PathBuf;
use std::{env, fs};

use perfdiv_core::graph6::to_graph6;
use perfdiv_fixgen::{decode, generate_levels, EXPECTED_COUNTS};

fn main() {
    let out_dir = env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    let levels = generate_levels(EXPECTED_COUNTS.len());
    fs::create_dir_all(&out_dir).expect("create output directory");
    for (i, level) in levels.iter().enumerate() {
        let n = i + 1;
        assert_eq!(
            level.len(),
            EXPECTED_COUNTS[i],
            "graph count mismatch at n = {n}"
        );
        let mut out = String::with_capacity(level.len() * (n / 2 + 3));
        for &code in level {
            out.push_str(&to_graph6(&decode(n, code)));
            out.push('\n');
        }
        let path = out_dir.join(format!("graphs_n{n}.g6"));
        fs::write(&path, out).expect("write fixture file");
        println!("n = {n}: {} graphs -> {}", level.len(), path.display());
    }
}
