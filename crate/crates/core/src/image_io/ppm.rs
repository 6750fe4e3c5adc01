//! Binary PGM (P5) and PPM (P6) with maxval 255.

use std::fs;
use std::path::Path;

use super::PlanarImage;
use crate::error::{Error, Result};
use crate::plane::Plane;

struct Header {
    channels: usize,
    width: usize,
    height: usize,
    data_offset: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(Error::MalformedHeader("expected P5 or P6 magic".into())),
    };
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for (i, field) in fields.iter_mut().enumerate() {
        // whitespace and comments before each token
        loop {
            match bytes.get(pos) {
                Some(c) if c.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&c| c != b'\n') {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => return Err(Error::MalformedHeader("header ended early".into())),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(Error::MalformedHeader(format!(
                "header token {} is not a number",
                i + 1
            )));
        }
        let token = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        *field = token
            .parse()
            .map_err(|_| Error::MalformedHeader(format!("header value {token} out of range")))?;
    }
    // exactly one whitespace byte separates maxval from the raster
    match bytes.get(pos) {
        Some(c) if c.is_ascii_whitespace() => pos += 1,
        _ => {
            return Err(Error::MalformedHeader(
                "missing whitespace after maxval".into(),
            ))
        }
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader("zero image dimension".into()));
    }
    Ok(Header {
        channels,
        width: width as usize,
        height: height as usize,
        data_offset: pos,
    })
}

/// Decodes an in-memory P5/P6 file.
pub fn decode_ppm(bytes: &[u8]) -> Result<PlanarImage> {
    let header = parse_header(bytes)?;
    let pixels = header.width * header.height;
    let expected = pixels * header.channels;
    let raster = &bytes[header.data_offset..];
    if raster.len() < expected {
        return Err(Error::Truncated {
            expected,
            found: raster.len(),
        });
    }
    let planes = (0..header.channels)
        .map(|c| {
            let data = raster[..expected]
                .iter()
                .skip(c)
                .step_by(header.channels)
                .copied()
                .collect();
            Plane::from_vec(header.width, header.height, data)
        })
        .collect::<Result<Vec<_>>>()?;
    PlanarImage::from_bytes(planes)
}

/// Encodes a 1-plane (P5) or 3-plane (P6) byte image.
pub fn encode_ppm(img: &PlanarImage) -> Result<Vec<u8>> {
    let planes = img.byte_planes()?;
    let magic = match planes.len() {
        1 => "P5",
        3 => "P6",
        n => {
            return Err(Error::PlaneCount {
                expected: 3,
                found: n,
            })
        }
    };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.reserve(img.width() * img.height() * planes.len());
    for i in 0..img.width() * img.height() {
        out.extend(planes.iter().map(|p| p.as_slice()[i]));
    }
    Ok(out)
}

pub fn read_ppm(path: impl AsRef<Path>) -> Result<PlanarImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_ppm(&bytes)
}

pub fn write_ppm(img: &PlanarImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_ppm(img)?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_io::{Planes, SampleDomain};
    use proptest::prelude::*;

    #[test]
    fn decodes_p6_pixels_into_planes() {
        let mut file = b"P6\n2 1\n255\n".to_vec();
        file.extend_from_slice(&[255, 0, 0, 0, 255, 0]);
        let img = decode_ppm(&file).unwrap();
        let [r, g, b] = img.rgb().unwrap();
        assert_eq!(r.as_slice(), &[255, 0]);
        assert_eq!(g.as_slice(), &[0, 255]);
        assert_eq!(b.as_slice(), &[0, 0]);
    }

    #[test]
    fn decodes_p5_single_plane() {
        let img = decode_ppm(b"P5 1 1 255\n\x80").unwrap();
        let planes = img.byte_planes().unwrap();
        assert_eq!(planes.len(), 1);
        assert_eq!(planes[0].as_slice(), &[128]);
    }

    #[test]
    fn header_comments_are_skipped() {
        let img = decode_ppm(b"P5\n# made by hand\n1 1\n255\n\x07").unwrap();
        assert_eq!(img.byte_planes().unwrap()[0].get(0, 0), 7);
    }

    #[test]
    fn rejects_16_bit_maxval() {
        let err = decode_ppm(b"P6\n1 1\n65535\n\0\0\0\0\0\0").unwrap_err();
        assert!(matches!(err, Error::UnsupportedMaxval(65535)), "{err}");
    }

    #[test]
    fn rejects_truncated_raster() {
        let err = decode_ppm(b"P6\n2 2\n255\n\0\0\0").unwrap_err();
        assert!(matches!(
            err,
            Error::Truncated {
                expected: 12,
                found: 3
            }
        ));
    }

    #[test]
    fn rejects_bad_magic_and_header() {
        assert!(matches!(
            decode_ppm(b"P3\n1 1\n255\n0 0 0").unwrap_err(),
            Error::MalformedHeader(_)
        ));
        assert!(matches!(
            decode_ppm(b"P6\n1 x\n255\n").unwrap_err(),
            Error::MalformedHeader(_)
        ));
        assert!(matches!(
            decode_ppm(b"P6\n1 1").unwrap_err(),
            Error::MalformedHeader(_)
        ));
    }

    #[test]
    fn single_plane_encodes_as_p5() {
        let img = PlanarImage::from_bytes(vec![Plane::filled(3, 2, 9u8)]).unwrap();
        let bytes = encode_ppm(&img).unwrap();
        assert!(bytes.starts_with(b"P5\n3 2\n255\n"));
        assert_eq!(bytes.len(), 11 + 6);
    }

    #[test]
    fn real_image_cannot_be_written() {
        let img = PlanarImage::new(Planes::Real(vec![Plane::filled(2, 2, 0.5)])).unwrap();
        assert_eq!(img.domain(), SampleDomain::Real);
        assert!(matches!(
            encode_ppm(&img).unwrap_err(),
            Error::WrongDomain { .. }
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.ppm");
        let img = PlanarImage::rgb_from_fn(5, 3, |x, y| [x as u8, y as u8, (x * y) as u8]);
        write_ppm(&img, &path).unwrap();
        assert_eq!(read_ppm(&path).unwrap(), img);
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            read_ppm("/nonexistent/nope.ppm").unwrap_err(),
            Error::Io { .. }
        ));
    }

    proptest! {
        #[test]
        fn encode_decode_is_bit_exact(
            w in 1usize..12,
            h in 1usize..12,
            gray in any::<bool>(),
            seed in any::<u64>(),
        ) {
            let channels = if gray { 1 } else { 3 };
            let mut state = seed;
            let planes = (0..channels)
                .map(|_| {
                    Plane::from_fn(w, h, |_, _| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (state >> 56) as u8
                    })
                })
                .collect();
            let img = PlanarImage::from_bytes(planes).unwrap();
            let back = decode_ppm(&encode_ppm(&img).unwrap()).unwrap();
            prop_assert_eq!(back, img);
        }
    }
}
