//! The lattice code on a centred window: defects, symmetries and tiles.

use griddom::render::window_text;
use griddom::tpc::{build_s1, symmetry_group, window_tiles};

fn main() -> griddom::Result<()> {
    let window = build_s1(6)?;
    print!("{}", window_text(&window));
    println!("interior defects: {}", window.interior_defects().len());
    println!("symmetries: {:?}", symmetry_group(&window));
    let shifted = (1..=3).filter(|&t| window.preserved_by_translation(t, 0)).count();
    println!("horizontal shifts 1..=3 preserving the window: {shifted}");
    for tile in window_tiles(&window)?.iter().filter(|t| t.ladder && t.w * t.h == 3) {
        println!("central ladder {}x{} at ({}, {})", tile.w, tile.h, tile.x0, tile.y0);
    }
    Ok(())
}
