//! Binary PPM (P6) heatmaps of |ψ| on 2-d grids.
//!
//! Max-normalized linear grayscale; an optional circle is drawn in pure red.
//! Pixel (col, row) is the grid cell at axis-0 index `col` and axis-1 index
//! `n₁−1−row`, so the image has x₁ rightward and x₂ upward.

use std::io::Write;

use crate::error::{Error, Result};
use crate::geom::Grid;

pub fn write_ppm_heatmap(
    path: &std::path::Path,
    grid: &Grid,
    abs_values: &[f64],
    circle: Option<(&[f64], f64)>,
) -> Result<()> {
    if grid.dim() != 2 {
        return Err(Error::InvalidArgument("PPM heatmaps are 2-d only".into()));
    }
    let n = grid.axis_counts();
    let (w, h) = (n[0], n[1]);
    let max = abs_values
        .iter()
        .enumerate()
        .filter(|&(i, _)| grid.is_inside(i))
        .map(|(_, &v)| v)
        .fold(0.0f64, f64::max);
    let spacing = grid.spacing();
    let mut data = Vec::with_capacity(w * h * 3);
    for row in 0..h {
        let i1 = h - 1 - row;
        for col in 0..w {
            let lin = col * h + i1;
            let x = grid.center(lin);
            let on_circle = circle.is_some_and(|(c, r)| {
                (crate::geom::dist(&x, c) - r).abs() <= spacing * 0.5
            });
            if on_circle {
                data.extend_from_slice(&[255, 0, 0]);
            } else if !grid.is_inside(lin) || max == 0.0 {
                data.extend_from_slice(&[0, 0, 0]);
            } else {
                let g = (abs_values[lin] / max * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8;
                data.extend_from_slice(&[g, g, g]);
            }
        }
    }
    let mut file = std::fs::File::create(path)?;
    write!(file, "P6\n{} {}\n255\n", w, h)?;
    file.write_all(&data)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Domain;

    #[test]
    fn header_and_size() {
        let grid = Grid::new(Domain::unit_box(2), 0.25).unwrap();
        let vals: Vec<f64> = (0..grid.lattice_len()).map(|i| i as f64).collect();
        let dir = std::env::temp_dir().join("inradius_lab_ppm_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.ppm");
        write_ppm_heatmap(&path, &grid, &vals, Some((&[0.5, 0.5], 0.3))).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"P6\n4 4\n255\n"));
        assert_eq!(bytes.len(), b"P6\n4 4\n255\n".len() + 4 * 4 * 3);
        // determinism
        write_ppm_heatmap(&path, &grid, &vals, Some((&[0.5, 0.5], 0.3))).unwrap();
        assert_eq!(bytes, std::fs::read(&path).unwrap());
    }
}
