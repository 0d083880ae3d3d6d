use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::{Error, Result};

/// Axis-aligned rectangle in the complex k plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Region {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let r = Self {
            re_min,
            re_max,
            im_min,
            im_max,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.re_min, self.re_max, self.im_min, self.im_max];
        if vals.iter().any(|v| !v.is_finite()) || self.re_max <= self.re_min || self.im_max <= self.im_min {
            return Err(Error::InvalidArgument("region must be finite and non-degenerate"));
        }
        Ok(())
    }

    pub fn contains(&self, k: Complex64, margin: f64) -> bool {
        k.re >= self.re_min - margin
            && k.re <= self.re_max + margin
            && k.im >= self.im_min - margin
            && k.im <= self.im_max + margin
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            re_min: self.re_min * s,
            re_max: self.re_max * s,
            im_min: self.im_min * s,
            im_max: self.im_max * s,
        }
    }

    fn point(&self, i: usize, j: usize, nx: usize, ny: usize) -> Complex64 {
        let fx = i as f64 / (nx - 1) as f64;
        let fy = j as f64 / (ny - 1) as f64;
        Complex64::new(
            self.re_min + fx * (self.re_max - self.re_min),
            self.im_min + fy * (self.im_max - self.im_min),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seed {
    pub k: Complex64,
    pub value: f64,
}

/// |f| sampled on a uniform grid. `values[j * nx + i]` holds the sample at
/// column `i` (real part ascending) and row `j` (imaginary part ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMap {
    pub region: Region,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    pub seeds: Vec<Seed>,
}

fn check_resolution(region: &Region, nx: usize, ny: usize) -> Result<()> {
    region.validate()?;
    if nx < 3 || ny < 3 {
        return Err(Error::InvalidArgument(
            "grid resolution must be at least 3 in each direction",
        ));
    }
    Ok(())
}

/// Grid nodes in the storage order of [`DensityMap::values`].
pub fn grid_points(region: &Region, nx: usize, ny: usize) -> Result<Vec<Complex64>> {
    check_resolution(region, nx, ny)?;
    let mut pts = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            pts.push(region.point(i, j, nx, ny));
        }
    }
    Ok(pts)
}

impl DensityMap {
    /// Builds the map from precomputed samples (one per grid node). Non-finite
    /// samples are stored as +∞.
    pub fn from_samples(region: Region, nx: usize, ny: usize, samples: &[Result<Complex64>]) -> Result<Self> {
        check_resolution(&region, nx, ny)?;
        if samples.len() != nx * ny {
            return Err(Error::InvalidArgument("sample count does not match the grid"));
        }
        let values = samples
            .iter()
            .map(|s| match s {
                Ok(z) if z.re.is_finite() && z.im.is_finite() => z.norm(),
                _ => f64::INFINITY,
            })
            .collect();
        let mut map = Self {
            region,
            nx,
            ny,
            values,
            seeds: Vec::new(),
        };
        map.seeds = map.local_minima();
        Ok(map)
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        self.region.point(i, j, self.nx, self.ny)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// Cells strictly below all of their (up to eight) neighbours.
    fn local_minima(&self) -> Vec<Seed> {
        let mut seeds = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                let v = self.value(i, j);
                if !v.is_finite() {
                    continue;
                }
                let mut is_min = true;
                'nb: for dj in -1i64..=1 {
                    for di in -1i64..=1 {
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        let (ii, jj) = (i as i64 + di, j as i64 + dj);
                        if ii < 0 || jj < 0 || ii >= self.nx as i64 || jj >= self.ny as i64 {
                            continue;
                        }
                        if self.value(ii as usize, jj as usize) <= v {
                            is_min = false;
                            break 'nb;
                        }
                    }
                }
                if is_min {
                    seeds.push(Seed {
                        k: self.point(i, j),
                        value: v,
                    });
                }
            }
        }
        seeds.sort_by(|a, b| {
            a.value
                .partial_cmp(&b.value)
                .unwrap_or(Ordering::Equal)
                .then(a.k.re.total_cmp(&b.k.re))
                .then(a.k.im.total_cmp(&b.k.im))
        });
        seeds
    }
}

/// Serial scan of |f| over the grid; evaluation errors become +∞ cells.
pub fn grid_scan<F>(mut f: F, region: &Region, nx: usize, ny: usize) -> Result<DensityMap>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let samples: Vec<Result<Complex64>> = grid_points(region, nx, ny)?.into_iter().map(&mut f).collect();
    DensityMap::from_samples(*region, nx, ny, &samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_root_at_origin() {
        let region = Region::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let map = grid_scan(Ok, &region, 21, 21).unwrap();
        assert_eq!(map.seeds.len(), 1);
        assert!(map.seeds[0].k.norm() < 1e-12);
    }

    #[test]
    fn two_constructed_roots() {
        let (a, b) = (Complex64::new(1.0, -1.0), Complex64::new(-1.0, -1.0));
        let region = Region::new(-2.0, 2.0, -2.0, 0.5).unwrap();
        let map = grid_scan(|k| Ok((k - a) * (k - b)), &region, 41, 26).unwrap();
        assert_eq!(map.seeds.len(), 2);
        for root in [a, b] {
            assert!(map.seeds.iter().any(|s| (s.k - root).norm() < 0.15));
        }
    }

    #[test]
    fn flat_and_failing_cells() {
        let region = Region::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let map = grid_scan(|_| Ok(Complex64::new(1.0, 0.0)), &region, 5, 5).unwrap();
        assert!(map.seeds.is_empty());
        let map = grid_scan(
            |k| {
                if k.re < 0.5 {
                    Err(Error::NonFinite(k))
                } else {
                    Ok(k - 0.75)
                }
            },
            &region,
            5,
            5,
        )
        .unwrap();
        assert!(map.values[0].is_infinite());
        assert_eq!(map.seeds.len(), 1);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(Region::new(0.0, 0.0, 0.0, 1.0).is_err());
        let region = Region::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(grid_scan(Ok, &region, 2, 5).is_err());
    }
}
