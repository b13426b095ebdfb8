use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;

/// Compact JSON with every real written to 17 significant digits.
struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", real(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// `value` in scientific notation with 17 significant digits.
pub fn real(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(buf)
}

pub enum Sink {
    Stdout(io::Stdout),
    Stderr(io::Stderr),
    File(BufWriter<File>),
}

impl Sink {
    pub fn stdout_or(path: Option<&Path>) -> io::Result<Self> {
        Ok(match path {
            Some(p) => Sink::File(BufWriter::new(File::create(p)?)),
            None => Sink::Stdout(io::stdout()),
        })
    }

    pub fn stderr_or(path: Option<&Path>) -> io::Result<Self> {
        Ok(match path {
            Some(p) => Sink::File(BufWriter::new(File::create(p)?)),
            None => Sink::Stderr(io::stderr()),
        })
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Sink::Stdout(s) => s.write(buf),
            Sink::Stderr(s) => s.write(buf),
            Sink::File(f) => f.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Sink::Stdout(s) => s.flush(),
            Sink::Stderr(s) => s.flush(),
            Sink::File(f) => f.flush(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            let back: f64 = real(v).parse().unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn json_uses_17_digits() {
        let out =
            String::from_utf8(to_json(&serde_json::json!({"x": 0.1, "n": 3})).unwrap()).unwrap();
        assert_eq!(out, "{\"n\":3,\"x\":1.0000000000000001e-1}\n");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["x"].as_f64(), Some(0.1));
    }
}
