//! Chunked file reading for the streaming corpus commands.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{CliError, Result};

pub const BLOCK_SIZE: usize = 8 << 20;

/// A run of whole lines; `offset` is the byte offset of `data[0]` in the file.
#[derive(Debug)]
pub struct Block {
    pub offset: u64,
    pub data: Vec<u8>,
}

impl Block {
    /// Lines without their `\n`, each with its absolute byte offset.
    pub fn lines(&self) -> impl Iterator<Item = (u64, &[u8])> {
        let mut start = 0usize;
        let data = &self.data[..];
        let base = self.offset;
        std::iter::from_fn(move || {
            if start >= data.len() {
                return None;
            }
            let end = memchr(b'\n', &data[start..]).map_or(data.len(), |i| start + i);
            let line = &data[start..end];
            let at = base + start as u64;
            start = end + 1;
            Some((at, line))
        })
    }
}

fn memchr(needle: u8, hay: &[u8]) -> Option<usize> {
    hay.iter().position(|&b| b == needle)
}

/// Splits a reader into blocks of roughly `block_size` bytes that end on a
/// line boundary.
pub struct BlockReader<R> {
    reader: R,
    offset: u64,
    carry: Vec<u8>,
    block_size: usize,
    done: bool,
}

impl<R: Read> BlockReader<R> {
    pub fn new(reader: R, block_size: usize) -> Self {
        Self {
            reader,
            offset: 0,
            carry: Vec::new(),
            block_size: block_size.max(1),
            done: false,
        }
    }

    fn fill(&mut self) -> io::Result<Option<Block>> {
        if self.done {
            return Ok(None);
        }
        let mut data = std::mem::take(&mut self.carry);
        let target = self.block_size.max(data.len());
        let mut filled = data.len();
        data.resize(target, 0);
        while filled < target {
            match self.reader.read(&mut data[filled..]) {
                Ok(0) => {
                    self.done = true;
                    break;
                }
                Ok(n) => filled += n,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(e) => return Err(e),
            }
        }
        data.truncate(filled);
        if !self.done {
            match data.iter().rposition(|&b| b == b'\n') {
                Some(cut) => self.carry = data.split_off(cut + 1),
                // a single line longer than the block: keep reading into it
                None => {
                    self.carry = data;
                    self.block_size *= 2;
                    return self.fill();
                }
            }
        }
        if data.is_empty() {
            return Ok(None);
        }
        let block = Block {
            offset: self.offset,
            data,
        };
        self.offset += block.data.len() as u64;
        Ok(Some(block))
    }
}

impl<R: Read> Iterator for BlockReader<R> {
    type Item = io::Result<Block>;

    fn next(&mut self) -> Option<Self::Item> {
        self.fill().transpose()
    }
}

pub fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| CliError::io(path, e))
}

pub fn blocks(path: &Path) -> Result<BlockReader<File>> {
    Ok(BlockReader::new(open(path)?, BLOCK_SIZE))
}

/// Line-by-line reader for the (small) evaluation files: yields 1-based line
/// numbers with decoded text, stripping `\n` and a trailing `\r`.
pub fn text_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let mut reader = BufReader::new(open(path)?);
    let mut out = Vec::new();
    let mut buf = Vec::new();
    let mut offset = 0u64;
    let mut line_no = 0usize;
    loop {
        buf.clear();
        let n = reader.read_until(b'\n', &mut buf).map_err(|e| CliError::io(path, e))?;
        if n == 0 {
            break;
        }
        line_no += 1;
        let mut end = buf.len();
        if buf[..end].ends_with(b"\n") {
            end -= 1;
        }
        if buf[..end].ends_with(b"\r") {
            end -= 1;
        }
        let text = corpuskit_core::corpus::decode_line(&buf[..end], offset).map_err(|e| CliError::input(path, e))?;
        out.push((line_no, text.to_owned()));
        offset += n as u64;
    }
    Ok(out)
}
