//! The instance file format: save, load, and the field-path errors a
//! malformed file produces.
//!
//! Run with `cargo run --example instance_files`.

use rusm::harness::{load_description, load_instance, save_instance, InstanceDescription};
use rusm::instances::HardInstanceDescriptor;

fn main() -> rusm::Result<()> {
    let dir = std::env::temp_dir().join("rusm_instance_files_example");
    std::fs::create_dir_all(&dir)?;

    // A hard-family file stores its parameters plus the induced weights.
    let path = dir.join("paired.json");
    let descriptor = HardInstanceDescriptor::paired_parity(3, 2.0, 0.4)?;
    save_instance(&InstanceDescription::Hard(descriptor), &path)?;
    println!("{}:\n{}", path.display(), std::fs::read_to_string(&path)?);

    let instance = load_instance(&path)?;
    println!("loaded: n = {}, ℓ sign {:?}", instance.ground.n(), instance.ell.sign());
    assert_eq!(load_description(&path)?, InstanceDescription::Hard(descriptor));

    // Explicit structures round-trip too.
    let cut_path = dir.join("cut.json");
    save_instance(
        &InstanceDescription::Cut {
            n: 4,
            edges: vec![(0, 1, 1.0), (2, 3, 0.5)],
            ell: vec![0.1, -0.2, 0.0, 0.3],
        },
        &cut_path,
    )?;
    println!(
        "cut instance objective on {{0,2}}: {}",
        load_instance(&cut_path)?.objective(rusm::core::mask::SubsetMask::from_elements([0, 2]),)
    );

    // Malformed files fail with the path of the offending field.
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n": 3, "g": {"kind": "cut", "params": {"edges": []}}, "ell": [0.0]}"#,
    )?;
    println!("short weight vector → {}", load_instance(&bad).unwrap_err());
    std::fs::write(
        &bad,
        r#"{"n": 3, "g": {"kind": "monotone_sec3", "params": {"r": 7.0}}, "ell": [-7.0, -7.0, -7.0]}"#,
    )?;
    println!("out-of-range parameter → {}", load_instance(&bad).unwrap_err());
    Ok(())
}
