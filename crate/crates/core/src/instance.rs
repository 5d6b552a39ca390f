//! Requests, problem instances, and the instance file format.
//!
//! An instance file is plain CSV with a single header comment:
//!
//! ```text
//! # pdp d=<d> n=<n>
//! s_1,...,s_d,t_1,...,t_d
//! ...
//! ```
//!
//! one row per request, origin coordinates first. Coordinates are written
//! with Rust's shortest round-trip float formatting, so a write/read cycle
//! reproduces them bit-exactly.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{dist, Point};
use crate::scalar::Scalar;

/// A transportation request: move one object from `origin` to `destination`.
#[derive(Debug, Clone, PartialEq)]
pub struct Request<S> {
    pub origin: Point<S>,
    pub destination: Point<S>,
}

impl<S: Scalar> Request<S> {
    pub fn new(origin: Point<S>, destination: Point<S>) -> Result<Self> {
        if origin.dim() != destination.dim() {
            return Err(Error::DimensionMismatch(origin.dim(), destination.dim()));
        }
        Ok(Request {
            origin,
            destination,
        })
    }

    pub fn dim(&self) -> usize {
        self.origin.dim()
    }

    /// Straight-line length of the request itself.
    pub fn displacement(&self) -> S {
        dist(&self.origin, &self.destination)
    }
}

/// Maps a request to the single point in `2d`-dimensional space obtained by
/// concatenating its origin and destination coordinates. Tour neighbors in
/// the lifted space are requests with similar origins and similar
/// destinations.
pub fn lift<S: Scalar>(r: &Request<S>) -> Point<S> {
    r.origin.concat(&r.destination)
}

/// A set of requests in `[0,1]^d` plus the vehicle's initial location.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<S> {
    d: usize,
    requests: Vec<Request<S>>,
    depot: Point<S>,
}

impl<S: Scalar> Instance<S> {
    /// Builds an instance with the default all-zeros depot.
    pub fn new(d: usize, requests: Vec<Request<S>>) -> Result<Self> {
        Self::with_depot(d, requests, Point::origin(d))
    }

    pub fn with_depot(d: usize, requests: Vec<Request<S>>, depot: Point<S>) -> Result<Self> {
        if requests.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if depot.dim() != d {
            return Err(Error::DimensionMismatch(depot.dim(), d));
        }
        for r in &requests {
            if r.dim() != d {
                return Err(Error::DimensionMismatch(r.dim(), d));
            }
        }
        Ok(Instance { d, requests, depot })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.requests.len()
    }

    pub fn requests(&self) -> &[Request<S>] {
        &self.requests
    }

    pub fn request(&self, i: usize) -> &Request<S> {
        &self.requests[i]
    }

    pub fn depot(&self) -> &Point<S> {
        &self.depot
    }

    /// `Σ ||s_i - t_i||`, summed in request-index order.
    pub fn sum_displacements(&self) -> S {
        let mut acc = S::zero();
        for r in &self.requests {
            acc += r.displacement();
        }
        acc
    }

    /// Lifted `2d`-dimensional point per request, in index order.
    pub fn lifted_points(&self) -> Vec<Point<S>> {
        self.requests.iter().map(lift).collect()
    }

    /// Number of coordinates lying outside `[0,1]`. Out-of-cube instances
    /// are legal; callers may want to warn about them.
    pub fn out_of_cube_coords(&self) -> usize {
        self.requests
            .iter()
            .flat_map(|r| [&r.origin, &r.destination])
            .flat_map(|p| p.coords())
            .filter(|&&x| !(x >= S::zero() && x <= S::one()))
            .count()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = BufWriter::new(w);
        writeln!(w, "# pdp d={} n={}", self.d, self.n())?;
        for r in &self.requests {
            let row: Vec<String> = r
                .origin
                .coords()
                .iter()
                .chain(r.destination.coords())
                .map(|x| format!("{x}"))
                .collect();
            writeln!(w, "{}", row.join(","))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let f = std::fs::File::create(path)?;
        self.write_csv(f)
    }

    pub fn read_csv<R: Read>(r: R, path: &str) -> Result<Self> {
        let r = BufReader::new(r);
        let parse_err = |line: usize, msg: String| Error::Parse {
            path: path.to_string(),
            line,
            msg,
        };

        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty file".into()))??;
        let (d, n) = parse_header(&header).ok_or_else(|| {
            parse_err(
                1,
                format!("expected header '# pdp d=<d> n=<n>', got '{header}'"),
            )
        })?;

        let mut requests = Vec::with_capacity(n);
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 2 * d {
                return Err(parse_err(
                    lineno,
                    format!("expected {} fields, got {}", 2 * d, fields.len()),
                ));
            }
            let mut coords = Vec::with_capacity(2 * d);
            for f in fields {
                let v: f64 = f
                    .trim()
                    .parse()
                    .map_err(|e| parse_err(lineno, format!("bad coordinate '{f}': {e}")))?;
                if !v.is_finite() {
                    return Err(parse_err(lineno, format!("non-finite coordinate '{f}'")));
                }
                coords.push(S::from_f64_lossy(v));
            }
            let destination = Point::new(coords.split_off(d));
            let origin = Point::new(coords);
            requests.push(Request {
                origin,
                destination,
            });
        }
        if requests.len() != n {
            return Err(parse_err(
                0,
                format!("header announced n={n} but file has {} rows", requests.len()),
            ));
        }
        Instance::new(d, requests)
    }

    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        let display = path.as_ref().display().to_string();
        let f = std::fs::File::open(path)?;
        Self::read_csv(f, &display)
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let rest = line.trim().strip_prefix('#')?.trim().strip_prefix("pdp")?;
    let mut d = None;
    let mut n = None;
    for tok in rest.split_whitespace() {
        if let Some(v) = tok.strip_prefix("d=") {
            d = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("n=") {
            n = v.parse().ok();
        }
    }
    match (d, n) {
        (Some(d), Some(n)) if d >= 1 => Some((d, n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req1(s: f64, t: f64) -> Request<f64> {
        Request::new(Point::new(vec![s]), Point::new(vec![t])).unwrap()
    }

    #[test]
    fn lift_concatenates_origin_then_destination() {
        let r = req1(0.2, 0.4);
        assert_eq!(lift(&r).coords(), &[0.2, 0.4]);

        let r2 = Request::new(Point::new(vec![0.0, 0.0]), Point::new(vec![1.0, 1.0])).unwrap();
        assert_eq!(lift(&r2).coords(), &[0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_length_request_lifts_onto_the_diagonal() {
        let r = req1(0.7, 0.7);
        let p = lift(&r);
        assert_eq!(p[0], p[1]);
        assert_eq!(r.displacement(), 0.0);
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let requests = vec![
            Request::new(
                Point::new(vec![0.123456789012345, 0.9]),
                Point::new(vec![1.0 / 3.0, 2.0_f64.sqrt() / 2.0]),
            )
            .unwrap(),
            Request::new(Point::new(vec![0.0, 0.0]), Point::new(vec![1.0, 1.0])).unwrap(),
        ];
        let inst = Instance::new(2, requests).unwrap();
        let mut buf = Vec::new();
        inst.write_csv(&mut buf).unwrap();
        let back: Instance<f64> = Instance::read_csv(&buf[..], "mem").unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let text = "# pdp d=1 n=3\n0.1,0.2\n";
        let e = Instance::<f64>::read_csv(text.as_bytes(), "mem");
        assert!(e.is_err());
    }

    #[test]
    fn empty_instance_is_rejected() {
        assert!(matches!(
            Instance::<f64>::new(1, vec![]),
            Err(Error::EmptyInstance)
        ));
    }

    #[test]
    fn out_of_cube_is_counted_not_rejected() {
        let inst = Instance::new(1, vec![req1(-0.5, 2.0), req1(0.2, 0.4)]).unwrap();
        assert_eq!(inst.out_of_cube_coords(), 2);
    }
}
