//! Regenerates the derived corpus files: `cargo run -p bsg-core --example write_corpus`.

use std::fs;
use std::path::Path;

use bsg_core::diagram::{knot_from_pd, GraphDiagram, PdCrossing};
use bsg_core::generate::{pendant_family, theta_theta};

fn write(path: &Path, header: &str, d: &GraphDiagram) {
    fs::write(path, format!("# {header}\n{}", d.to_bsg())).expect("write corpus file");
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let trefoil = [PdCrossing([1, 5, 2, 4]), PdCrossing([3, 1, 4, 6]), PdCrossing([5, 3, 6, 2])];
    let figure8 = [
        PdCrossing([4, 2, 5, 1]),
        PdCrossing([8, 6, 1, 5]),
        PdCrossing([6, 3, 7, 4]),
        PdCrossing([2, 7, 3, 8]),
    ];
    write(
        &root.join("trefoil.bsg"),
        "trefoil with a V2 and a V1 vertex of valency 2 on it",
        &knot_from_pd(&trefoil, 1, 4).unwrap(),
    );
    write(
        &root.join("figure8.bsg"),
        "figure-eight knot with a V2 and a V1 vertex of valency 2 on it",
        &knot_from_pd(&figure8, 1, 4).unwrap(),
    );
    write(&root.join("theta_theta.bsg"), "two disjoint theta-curves (disconnected)", &theta_theta());
    let dir = root.join("pendant");
    fs::create_dir_all(&dir).unwrap();
    for (name, d) in pendant_family() {
        write(&dir.join(format!("{name}.bsg")), "v2 has valency 1 and shares edge g1 with u2", &d);
    }
}
