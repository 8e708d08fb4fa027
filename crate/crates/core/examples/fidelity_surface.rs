//! A coarse fidelity surface over (alpha, gamma) written as CSV, metadata and
//! an SVG heatmap. Pass a gate name to pick another gate.

use nhqc_ion::experiments::{
    emit_plot, export_surface, sweep_fidelity, synthesize, GateKind, GateParams, SweepGrid,
    SweepSettings,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gate: GateKind = std::env::args().nth(1).as_deref().unwrap_or("phase").parse()?;
    let g = synthesize(&GateParams::for_gate(gate))?;
    let grid = SweepGrid::linear((-0.2, 0.2, 9), (0.0, 100.0, 5))?;
    let table = sweep_fidelity(&g, &grid, &SweepSettings::default())?;

    let out = std::env::temp_dir().join("nhqc-example");
    std::fs::create_dir_all(&out)?;
    let csv = out.join(format!("{gate}_surface.csv"));
    let meta = export_surface(&table, &csv)?;
    let plot = emit_plot(&table, &out.join(format!("{gate}_surface.svg")))?;

    for (j, gamma) in table.gammas_hz().iter().enumerate() {
        let row: Vec<String> = (0..table.alphas().len()).map(|i| format!("{:.4}", table.at(i, j).fidelity)).collect();
        println!("gamma {gamma:>5.1} Hz: {}", row.join(" "));
    }
    println!("wrote {}, {} and {plot:?}", csv.display(), meta.display());
    Ok(())
}
