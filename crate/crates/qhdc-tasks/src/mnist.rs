//! MNIST IDX ingestion (big-endian, magic 0x803 for images, 0x801 for
//! labels), filtered to the digits 3 and 6.

use std::fs;
use std::path::Path;

use byteorder::{BigEndian, ReadBytesExt};

use crate::dataset::{Dataset, DatasetSource, Image, CLASS_LABELS, IMAGE_SIDE};
use crate::TaskError;

const IMAGES_MAGIC: u32 = 0x0000_0803;
const LABELS_MAGIC: u32 = 0x0000_0801;

struct Reader<'a> {
    path: &'a str,
    cursor: std::io::Cursor<Vec<u8>>,
}

impl<'a> Reader<'a> {
    fn open(path: &'a str) -> Result<Self, TaskError> {
        let bytes = fs::read(Path::new(path)).map_err(|source| TaskError::Io {
            path: path.to_string(),
            source,
        })?;
        Ok(Self { path, cursor: std::io::Cursor::new(bytes) })
    }

    fn offset(&self) -> u64 {
        self.cursor.position()
    }

    fn len(&self) -> u64 {
        self.cursor.get_ref().len() as u64
    }

    fn u32(&mut self, what: &str) -> Result<u32, TaskError> {
        let offset = self.offset();
        self.cursor.read_u32::<BigEndian>().map_err(|_| TaskError::Format {
            path: self.path.to_string(),
            offset,
            message: format!("truncated while reading {what}"),
        })
    }

    fn format_error(&self, offset: u64, message: String) -> TaskError {
        TaskError::Format { path: self.path.to_string(), offset, message }
    }
}

/// Load an MNIST image/label pair, keeping only 3s and 6s; pixels are scaled
/// to [0, 1] by dividing by 255.
pub fn load_mnist(images_path: &str, labels_path: &str) -> Result<Dataset, TaskError> {
    let mut images = Reader::open(images_path)?;
    let magic = images.u32("magic number")?;
    if magic != IMAGES_MAGIC {
        return Err(images.format_error(0, format!("bad magic {magic:#010x}, expected {IMAGES_MAGIC:#010x}")));
    }
    let count = images.u32("image count")? as usize;
    let rows = images.u32("row count")? as usize;
    let cols = images.u32("column count")? as usize;
    if rows != IMAGE_SIDE || cols != IMAGE_SIDE {
        return Err(images.format_error(8, format!("expected 28x28 images, got {rows}x{cols}")));
    }
    let expected_len = 16 + count as u64 * (rows * cols) as u64;
    if images.len() != expected_len {
        return Err(images.format_error(
            images.len().min(expected_len),
            format!("expected {expected_len} bytes total, found {}", images.len()),
        ));
    }

    let mut labels = Reader::open(labels_path)?;
    let magic = labels.u32("magic number")?;
    if magic != LABELS_MAGIC {
        return Err(labels.format_error(0, format!("bad magic {magic:#010x}, expected {LABELS_MAGIC:#010x}")));
    }
    let label_count = labels.u32("label count")? as usize;
    if label_count != count {
        return Err(labels.format_error(
            4,
            format!("{label_count} labels for {count} images"),
        ));
    }
    let expected_labels_len = 8 + count as u64;
    if labels.len() != expected_labels_len {
        return Err(labels.format_error(
            labels.len().min(expected_labels_len),
            format!("expected {expected_labels_len} bytes total, found {}", labels.len()),
        ));
    }

    let pixel_bytes = &images.cursor.get_ref()[16..];
    let label_bytes = &labels.cursor.get_ref()[8..];
    let mut out = Vec::new();
    for i in 0..count {
        let label = label_bytes[i];
        if !CLASS_LABELS.contains(&label) {
            continue;
        }
        let start = i * rows * cols;
        let pixels = pixel_bytes[start..start + rows * cols]
            .iter()
            .map(|&b| b as f64 / 255.0)
            .collect();
        out.push(Image { pixels, label });
    }
    Ok(Dataset { images: out, source: DatasetSource::MnistIdx })
}
