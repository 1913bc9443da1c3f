//! A double-ended queue of linked fixed-capacity chunks with stable cursors.
//!
//! Every end operation and every cursor operation runs in a bounded number
//! of steps: no element is ever relocated and chunks are linked rather than
//! indexed through a growable directory.
//!
//! A [`Cursor`] is a plain value (chunk pointer, slot, logical position) that
//! is only ever dereferenced through the deque that issued it. The deque
//! checks the logical position against its live range before touching the
//! chunk pointer, which is what keeps the safe API sound:
//!
//! * chunks are unlinked and freed only from the front, once every position
//!   they hold is below the front;
//! * `pop_back` keeps emptied chunks linked past the tail, so a position that
//!   is popped and pushed again maps to the same chunk as before.

use std::fmt;
use std::marker::PhantomData;
use std::mem::MaybeUninit;
use std::ptr::NonNull;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub const DEFAULT_CHUNK_CAPACITY: usize = 256;

static NEXT_OWNER: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DequeError {
    #[error("deque is empty")]
    Empty,
    #[error("cursor was issued by a different deque")]
    ForeignCursor,
    #[error("cursor at position {pos} is outside the live range {front}..={end}")]
    OutOfRange { pos: u64, front: u64, end: u64 },
}

struct Chunk<T> {
    slots: Box<[MaybeUninit<T>]>,
    prev: Option<NonNull<Chunk<T>>>,
    next: Option<NonNull<Chunk<T>>>,
}

impl<T> Chunk<T> {
    fn alloc(capacity: usize) -> NonNull<Chunk<T>> {
        let slots = (0..capacity).map(|_| MaybeUninit::uninit()).collect();
        let chunk = Box::new(Chunk {
            slots,
            prev: None,
            next: None,
        });
        NonNull::from(Box::leak(chunk))
    }
}

/// A stable position in a [`ChunkedDeque`].
///
/// Cursors stay valid across pushes and pops at either end as long as the
/// position they address is not removed. Equality compares positions.
#[derive(Clone, Copy)]
pub struct Cursor {
    chunk: NonNull<()>,
    slot: usize,
    pos: u64,
    owner: u64,
}

// A cursor is inert data; it is only dereferenced by the owning deque after
// validation.
unsafe impl Send for Cursor {}
unsafe impl Sync for Cursor {}

impl PartialEq for Cursor {
    fn eq(&self, other: &Self) -> bool {
        self.pos == other.pos && self.owner == other.owner
    }
}

impl Eq for Cursor {}

impl fmt::Debug for Cursor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cursor")
            .field("pos", &self.pos)
            .field("slot", &self.slot)
            .finish()
    }
}

#[cfg(any(debug_assertions, feature = "audit"))]
impl Cursor {
    /// Signed distance `self - other`. Audit-only.
    pub fn distance_from(&self, other: &Cursor) -> i64 {
        debug_assert_eq!(self.owner, other.owner);
        self.pos as i64 - other.pos as i64
    }
}

#[cfg(any(debug_assertions, feature = "audit"))]
impl PartialOrd for Cursor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        (self.owner == other.owner).then(|| self.pos.cmp(&other.pos))
    }
}

pub struct ChunkedDeque<T> {
    head: NonNull<Chunk<T>>,
    head_slot: usize,
    // Next write position; the chunk always exists.
    tail: NonNull<Chunk<T>>,
    tail_slot: usize,
    front_pos: u64,
    len: usize,
    capacity: usize,
    chunks: usize,
    cache: Option<NonNull<Chunk<T>>>,
    owner: u64,
    _owns: PhantomData<T>,
}

unsafe impl<T: Send> Send for ChunkedDeque<T> {}
unsafe impl<T: Sync> Sync for ChunkedDeque<T> {}

impl<T> Default for ChunkedDeque<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> ChunkedDeque<T> {
    pub fn new() -> Self {
        Self::with_chunk_capacity(DEFAULT_CHUNK_CAPACITY)
    }

    pub fn with_chunk_capacity(capacity: usize) -> Self {
        assert!(capacity >= 1, "chunk capacity must be positive");
        let chunk = Chunk::alloc(capacity);
        Self {
            head: chunk,
            head_slot: 0,
            tail: chunk,
            tail_slot: 0,
            front_pos: 0,
            len: 0,
            capacity,
            chunks: 1,
            cache: None,
            owner: NEXT_OWNER.fetch_add(1, Ordering::Relaxed),
            _owns: PhantomData,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn chunk_capacity(&self) -> usize {
        self.capacity
    }

    /// Number of chunks currently linked, including empty spares past the
    /// tail. The one-slot cache is not counted.
    pub fn chunk_count(&self) -> usize {
        self.chunks
    }

    fn end_pos(&self) -> u64 {
        self.front_pos + self.len as u64
    }

    fn acquire_chunk(&mut self) -> NonNull<Chunk<T>> {
        self.cache
            .take()
            .unwrap_or_else(|| Chunk::alloc(self.capacity))
    }

    fn release_chunk(&mut self, chunk: NonNull<Chunk<T>>) {
        if self.cache.is_none() {
            unsafe {
                let c = chunk.as_ptr();
                (*c).prev = None;
                (*c).next = None;
            }
            self.cache = Some(chunk);
        } else {
            drop(unsafe { Box::from_raw(chunk.as_ptr()) });
        }
    }

    pub fn push_back(&mut self, value: T) {
        unsafe {
            (*self.tail.as_ptr()).slots[self.tail_slot].write(value);
        }
        self.len += 1;
        self.tail_slot += 1;
        if self.tail_slot == self.capacity {
            let next = match unsafe { (*self.tail.as_ptr()).next } {
                Some(spare) => spare,
                None => {
                    let fresh = self.acquire_chunk();
                    unsafe {
                        (*fresh.as_ptr()).prev = Some(self.tail);
                        (*self.tail.as_ptr()).next = Some(fresh);
                    }
                    self.chunks += 1;
                    fresh
                }
            };
            self.tail = next;
            self.tail_slot = 0;
        }
    }

    pub fn pop_front(&mut self) -> Result<T, DequeError> {
        if self.len == 0 {
            return Err(DequeError::Empty);
        }
        let value = unsafe { (*self.head.as_ptr()).slots[self.head_slot].assume_init_read() };
        self.len -= 1;
        self.front_pos += 1;
        self.head_slot += 1;
        if self.head_slot == self.capacity {
            // The tail chunk lies at or beyond the new front position, so a
            // successor exists.
            let old = self.head;
            let next = unsafe { (*old.as_ptr()).next }.expect("chunk list ends before tail");
            unsafe {
                (*next.as_ptr()).prev = None;
            }
            self.head = next;
            self.head_slot = 0;
            self.chunks -= 1;
            self.release_chunk(old);
        }
        Ok(value)
    }

    pub fn pop_back(&mut self) -> Result<T, DequeError> {
        if self.len == 0 {
            return Err(DequeError::Empty);
        }
        if self.tail_slot == 0 {
            self.tail =
                unsafe { (*self.tail.as_ptr()).prev }.expect("chunk list starts after head");
            self.tail_slot = self.capacity;
        }
        self.tail_slot -= 1;
        self.len -= 1;
        Ok(unsafe { (*self.tail.as_ptr()).slots[self.tail_slot].assume_init_read() })
    }

    pub fn front(&self) -> Option<&T> {
        (self.len > 0)
            .then(|| unsafe { (*self.head.as_ptr()).slots[self.head_slot].assume_init_ref() })
    }

    pub fn back(&self) -> Option<&T> {
        if self.len == 0 {
            return None;
        }
        Some(self.get(&self.prev(self.end())))
    }

    pub fn back_mut(&mut self) -> Option<&mut T> {
        if self.len == 0 {
            return None;
        }
        let last = self.prev(self.end());
        Some(self.get_mut(&last))
    }

    pub fn begin(&self) -> Cursor {
        Cursor {
            chunk: self.head.cast(),
            slot: self.head_slot,
            pos: self.front_pos,
            owner: self.owner,
        }
    }

    pub fn end(&self) -> Cursor {
        Cursor {
            chunk: self.tail.cast(),
            slot: self.tail_slot,
            pos: self.end_pos(),
            owner: self.owner,
        }
    }

    fn check(&self, cursor: &Cursor, past_end_ok: bool) -> Result<(), DequeError> {
        if cursor.owner != self.owner {
            return Err(DequeError::ForeignCursor);
        }
        let end = self.end_pos();
        let in_range = cursor.pos >= self.front_pos
            && (cursor.pos < end || (past_end_ok && cursor.pos == end));
        if in_range {
            Ok(())
        } else {
            Err(DequeError::OutOfRange {
                pos: cursor.pos,
                front: self.front_pos,
                end,
            })
        }
    }

    /// The cursor one position closer to the back.
    pub fn try_next(&self, cursor: Cursor) -> Result<Cursor, DequeError> {
        self.check(&cursor, false)?;
        let mut out = cursor;
        out.pos += 1;
        out.slot += 1;
        if out.slot == self.capacity {
            let chunk: NonNull<Chunk<T>> = cursor.chunk.cast();
            // pos + 1 <= end, and the chunk holding end is linked.
            out.chunk = unsafe { (*chunk.as_ptr()).next }
                .expect("chunk list ends before tail")
                .cast();
            out.slot = 0;
        }
        Ok(out)
    }

    /// The cursor one position closer to the front.
    pub fn try_prev(&self, cursor: Cursor) -> Result<Cursor, DequeError> {
        self.check(&cursor, true)?;
        if cursor.pos == self.front_pos {
            return Err(DequeError::OutOfRange {
                pos: cursor.pos,
                front: self.front_pos,
                end: self.end_pos(),
            });
        }
        let mut out = cursor;
        out.pos -= 1;
        if out.slot == 0 {
            let chunk: NonNull<Chunk<T>> = cursor.chunk.cast();
            out.chunk = unsafe { (*chunk.as_ptr()).prev }
                .expect("chunk list starts after head")
                .cast();
            out.slot = self.capacity - 1;
        } else {
            out.slot -= 1;
        }
        Ok(out)
    }

    pub fn try_get(&self, cursor: &Cursor) -> Result<&T, DequeError> {
        self.check(cursor, false)?;
        let chunk: NonNull<Chunk<T>> = cursor.chunk.cast();
        Ok(unsafe { (*chunk.as_ptr()).slots[cursor.slot].assume_init_ref() })
    }

    pub fn try_get_mut(&mut self, cursor: &Cursor) -> Result<&mut T, DequeError> {
        self.check(cursor, false)?;
        let chunk: NonNull<Chunk<T>> = cursor.chunk.cast();
        Ok(unsafe { (*chunk.as_ptr()).slots[cursor.slot].assume_init_mut() })
    }

    /// Panics if `cursor` is at the end or invalid.
    #[inline]
    pub fn next(&self, cursor: Cursor) -> Cursor {
        self.try_next(cursor)
            .unwrap_or_else(|e| panic!("cursor increment: {e}"))
    }

    /// Panics if `cursor` is at the front or invalid.
    #[inline]
    pub fn prev(&self, cursor: Cursor) -> Cursor {
        self.try_prev(cursor)
            .unwrap_or_else(|e| panic!("cursor decrement: {e}"))
    }

    #[inline]
    pub fn get(&self, cursor: &Cursor) -> &T {
        self.try_get(cursor)
            .unwrap_or_else(|e| panic!("cursor read: {e}"))
    }

    #[inline]
    pub fn get_mut(&mut self, cursor: &Cursor) -> &mut T {
        self.try_get_mut(cursor)
            .unwrap_or_else(|e| panic!("cursor write: {e}"))
    }

    pub fn set(&mut self, cursor: &Cursor, value: T) {
        *self.get_mut(cursor) = value;
    }

    pub fn iter(&self) -> Iter<'_, T> {
        Iter {
            deque: self,
            at: self.begin(),
            remaining: self.len,
        }
    }

    /// Zero-based index of `cursor` from the front. Audit-only.
    #[cfg(any(debug_assertions, feature = "audit"))]
    pub fn index_of(&self, cursor: &Cursor) -> Result<usize, DequeError> {
        self.check(cursor, true)?;
        Ok((cursor.pos - self.front_pos) as usize)
    }
}

impl<T> Drop for ChunkedDeque<T> {
    fn drop(&mut self) {
        while self.pop_front().is_ok() {}
        let mut next = Some(self.head);
        while let Some(chunk) = next {
            let boxed = unsafe { Box::from_raw(chunk.as_ptr()) };
            next = boxed.next;
        }
        if let Some(cached) = self.cache.take() {
            drop(unsafe { Box::from_raw(cached.as_ptr()) });
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for ChunkedDeque<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl<T> Extend<T> for ChunkedDeque<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for value in iter {
            self.push_back(value);
        }
    }
}

impl<T> FromIterator<T> for ChunkedDeque<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut deque = Self::new();
        deque.extend(iter);
        deque
    }
}

pub struct Iter<'a, T> {
    deque: &'a ChunkedDeque<T>,
    at: Cursor,
    remaining: usize,
}

impl<'a, T> Iterator for Iter<'a, T> {
    type Item = &'a T;

    fn next(&mut self) -> Option<&'a T> {
        if self.remaining == 0 {
            return None;
        }
        let item = self.deque.get(&self.at);
        self.remaining -= 1;
        if self.remaining > 0 {
            self.at = self.deque.next(self.at);
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl<T> ExactSizeIterator for Iter<'_, T> {}

impl<'a, T> IntoIterator for &'a ChunkedDeque<T> {
    type Item = &'a T;
    type IntoIter = Iter<'a, T>;

    fn into_iter(self) -> Iter<'a, T> {
        self.iter()
    }
}
