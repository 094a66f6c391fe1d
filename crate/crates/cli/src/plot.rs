//! Static SVG plots of experiment output.

use std::path::Path;

use plotters::prelude::*;

use crate::error::ExpError;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: &'static str,
    pub points: Vec<(f64, f64)>,
    /// Draw markers only instead of a polyline.
    pub scatter: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub title: String,
    pub x_label: &'static str,
    pub y_label: &'static str,
    pub series: Vec<Series>,
}

fn padded_range(values: impl Iterator<Item = f64>) -> std::ops::Range<f64> {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return 0.0..1.0;
    }
    let pad = ((hi - lo) * 0.05).max(1e-3);
    (lo - pad)..(hi + pad)
}

pub fn write_svg(figure: &Figure, path: &Path) -> Result<(), ExpError> {
    let err = |e: &dyn std::fmt::Display| ExpError::Plot(e.to_string());
    let root = SVGBackend::new(path, (800, 600)).into_drawing_area();
    root.fill(&WHITE).map_err(|e| err(&e))?;
    let points = || figure.series.iter().flat_map(|s| s.points.iter());
    let xr = padded_range(points().map(|p| p.0));
    let yr = padded_range(points().map(|p| p.1));
    let mut chart = ChartBuilder::on(&root)
        .caption(&figure.title, ("sans-serif", 22))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(50)
        .build_cartesian_2d(xr, yr)
        .map_err(|e| err(&e))?;
    chart
        .configure_mesh()
        .x_desc(figure.x_label)
        .y_desc(figure.y_label)
        .draw()
        .map_err(|e| err(&e))?;
    for (i, s) in figure.series.iter().enumerate() {
        let color = Palette99::pick(i).to_rgba();
        let anno = if s.scatter {
            chart.draw_series(s.points.iter().map(|&p| Circle::new(p, 2, color.filled())))
        } else {
            chart.draw_series(LineSeries::new(s.points.iter().copied(), color.stroke_width(2)))
        }
        .map_err(|e| err(&e))?;
        anno.label(s.name)
            .legend(move |(x, y)| PathElement::new([(x, y), (x + 20, y)], color.stroke_width(2)));
    }
    chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.8))
        .border_style(BLACK)
        .draw()
        .map_err(|e| err(&e))?;
    root.present().map_err(|e| err(&e))?;
    Ok(())
}
