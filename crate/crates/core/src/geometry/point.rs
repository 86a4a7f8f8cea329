use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::coord::{CoordKey, Coordinate, QuadInt};

/// A point (or translation vector) in dimension 1 or 2.
#[derive(Clone, Copy, Debug)]
pub struct Point {
    dim: u8,
    c: [Coordinate; 2],
}

impl Point {
    pub fn new(coords: &[Coordinate]) -> Point {
        assert!(
            (1..=2).contains(&coords.len()),
            "only dimensions 1 and 2 are supported"
        );
        let mut c = [Coordinate::Float(0.0); 2];
        c[..coords.len()].copy_from_slice(coords);
        Point {
            dim: coords.len() as u8,
            c,
        }
    }

    pub fn x(v: f64) -> Point {
        Point::new(&[Coordinate::Float(v)])
    }

    pub fn xy(x: f64, y: f64) -> Point {
        Point::new(&[Coordinate::Float(x), Coordinate::Float(y)])
    }

    pub fn exact(q: QuadInt) -> Point {
        Point::new(&[Coordinate::Exact(q)])
    }

    pub fn from_f64s(v: &[f64]) -> Point {
        let c: Vec<Coordinate> = v.iter().map(|&x| Coordinate::Float(x)).collect();
        Point::new(&c)
    }

    pub fn origin(dim: usize) -> Point {
        Point::from_f64s(&vec![0.0; dim])
    }

    /// Origin in the same representation as `self`.
    pub fn zero_like(&self) -> Point {
        let c: Vec<Coordinate> = self.coords().iter().map(|c| c.zero_like()).collect();
        Point::new(&c)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.c[..self.dim as usize]
    }

    pub fn coord(&self, i: usize) -> Coordinate {
        self.coords()[i]
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.coords().iter().map(|c| c.to_f64()).collect()
    }

    /// First coordinate as a float; the position in dimension 1.
    pub fn pos(&self) -> f64 {
        self.c[0].to_f64()
    }

    pub fn is_exact(&self) -> bool {
        self.coords().iter().all(|c| c.is_exact())
    }

    pub fn norm(&self) -> f64 {
        self.coords()
            .iter()
            .map(|c| c.to_f64().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (*self - *other).norm()
    }

    pub fn approx_eq(&self, other: &Point) -> bool {
        self.dim == other.dim
            && self
                .coords()
                .iter()
                .zip(other.coords())
                .all(|(a, b)| a.approx_eq(*b))
    }

    /// Lexicographic total order.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        for (a, b) in self.coords().iter().zip(other.coords()) {
            match a.total_cmp(*b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.dim.cmp(&other.dim)
    }

    pub fn key(&self) -> [CoordKey; 2] {
        let mut k = [CoordKey::Quant(0); 2];
        for (i, c) in self.coords().iter().enumerate() {
            k[i] = c.key();
        }
        k
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let c: Vec<Coordinate> = self
            .coords()
            .iter()
            .zip(o.coords())
            .map(|(a, b)| *a + *b)
            .collect();
        Point::new(&c)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        self + (-o)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        let c: Vec<Coordinate> = self.coords().iter().map(|a| -*a).collect();
        Point::new(&c)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
