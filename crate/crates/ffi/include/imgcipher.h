/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef IMGCIPHER_H
#define IMGCIPHER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Values accepted in [`ImgcipherConfig::level`].
 */
enum ImgcipherLevel
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  IMGCIPHER_LEVEL_FULL = 0,
  /*
   Row shift and additive keystream only.
   */
  IMGCIPHER_LEVEL_BASIC = 1,
};
#ifndef __cplusplus
typedef uint32_t ImgcipherLevel;
#endif // __cplusplus

/*
 Values accepted by [`imgcipher_position_entropy`].
 */
enum ImgcipherStage
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  IMGCIPHER_STAGE_IDENTITY = 0,
  IMGCIPHER_STAGE_ROW_SHIFT = 1,
  IMGCIPHER_STAGE_COL_SHIFT = 2,
  IMGCIPHER_STAGE_ARNOLD = 3,
  IMGCIPHER_STAGE_DISTRIBUTE = 4,
};
#ifndef __cplusplus
typedef uint32_t ImgcipherStage;
#endif // __cplusplus

/*
 Result of every fallible call. Values 3, 4 and 5 match the CLI exit
 statuses for the same conditions.
 */
enum ImgcipherStatus
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  IMGCIPHER_STATUS_OK = 0,
  IMGCIPHER_STATUS_NULL_POINTER = 1,
  IMGCIPHER_STATUS_INVALID_ARGUMENT = 2,
  IMGCIPHER_STATUS_KEY_RANGE = 3,
  IMGCIPHER_STATUS_CODEC = 4,
  IMGCIPHER_STATUS_DIMENSIONS = 5,
  IMGCIPHER_STATUS_IO = 6,
  IMGCIPHER_STATUS_FAILURE = 7,
  IMGCIPHER_STATUS_PANIC = 8,
};
#ifndef __cplusplus
typedef uint32_t ImgcipherStatus;
#endif // __cplusplus

typedef struct ImgcipherImage ImgcipherImage;

typedef struct ImgcipherKeystream ImgcipherKeystream;

typedef struct ImgcipherConfig {
  uint32_t block;
  uint32_t arnold_iterations;
  /*
   An [`ImgcipherLevel`] value.
   */
  uint32_t level;
} ImgcipherConfig;

/*
 Per-channel statistics. `has_corr_*` is false when the coefficient is
 undefined (constant image); the matching `corr_*` is then 0.
 */
typedef struct ImgcipherReport {
  double entropy_bits;
  double corr_horizontal;
  double corr_vertical;
  bool has_corr_horizontal;
  bool has_corr_vertical;
  double chi_square;
  uint64_t histogram[256];
} ImgcipherReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *imgcipher_version(void);

/*
 Static description of a status code.
 */
const char *imgcipher_status_message(ImgcipherStatus status);

/*
 Message for the most recent failed call on this thread, or NULL after a
 successful call. Valid until the next call into this library on the
 same thread.
 */
const char *imgcipher_last_error_message(void);

/*
 Default configuration: 16x16 blocks, one Arnold iteration, full level.
 */
struct ImgcipherConfig imgcipher_config_default(void);

/*
 Copies `len` row-major interleaved samples into a new image.
 `channels` must be 1 or 3.

 # Safety
 `samples` must point to `len` readable bytes; `out` must be writable.
 */
ImgcipherStatus imgcipher_image_new(size_t width,
                                    size_t height,
                                    size_t channels,
                                    const uint8_t *samples,
                                    size_t len,
                                    struct ImgcipherImage **out);

/*
 Loads a binary PGM (P5) or PPM (P6) file with max value 255.

 # Safety
 `path` must be a NUL-terminated string; `out` must be writable.
 */
ImgcipherStatus imgcipher_image_load(const char *path, struct ImgcipherImage **out);

/*
 # Safety
 `image` must be a live handle; `path` a NUL-terminated string.
 */
ImgcipherStatus imgcipher_image_save(const struct ImgcipherImage *image, const char *path);

/*
 # Safety
 `image` must be NULL or a live handle.
 */
size_t imgcipher_image_width(const struct ImgcipherImage *image);

/*
 # Safety
 `image` must be NULL or a live handle.
 */
size_t imgcipher_image_height(const struct ImgcipherImage *image);

/*
 # Safety
 `image` must be NULL or a live handle.
 */
size_t imgcipher_image_channels(const struct ImgcipherImage *image);

/*
 Borrowed pointer to the samples, valid while the handle lives. Writes
 the sample count to `len` when it is non-NULL.

 # Safety
 `image` must be NULL or a live handle; `len` NULL or writable.
 */
const uint8_t *imgcipher_image_samples(const struct ImgcipherImage *image, size_t *len);

/*
 # Safety
 `image` must be NULL or a handle not yet freed.
 */
void imgcipher_image_free(struct ImgcipherImage *image);

/*
 Encrypts into a new image. A NULL `config` means the defaults.

 # Safety
 `image` must be a live handle, `config` NULL or readable, `out` writable.
 */
ImgcipherStatus imgcipher_encrypt(const struct ImgcipherImage *image,
                                  double key_a,
                                  double key_k,
                                  const struct ImgcipherConfig *config,
                                  struct ImgcipherImage **out);

/*
 Decrypts into a new image. A NULL `config` means the defaults.

 # Safety
 Same as [`imgcipher_encrypt`].
 */
ImgcipherStatus imgcipher_decrypt(const struct ImgcipherImage *image,
                                  double key_a,
                                  double key_k,
                                  const struct ImgcipherConfig *config,
                                  struct ImgcipherImage **out);

/*
 Statistics of one channel.

 # Safety
 `image` must be a live handle; `report` writable.
 */
ImgcipherStatus imgcipher_analyze(const struct ImgcipherImage *image,
                                  uint32_t channel,
                                  struct ImgcipherReport *report);

/*
 Block position entropy, in bits, of the forward shuffle `stage` (an
 [`ImgcipherStage`] value) applied to one channel on a `block` grid.
 `iterations` is used only by the Arnold stage.

 # Safety
 `image` must be a live handle; `out` writable.
 */
ImgcipherStatus imgcipher_position_entropy(const struct ImgcipherImage *image,
                                           uint32_t channel,
                                           uint32_t stage,
                                           uint32_t block,
                                           uint32_t iterations,
                                           double *out);

/*
 # Safety
 `out` must be writable.
 */
ImgcipherStatus imgcipher_keystream_new(double key_a,
                                        double key_k,
                                        struct ImgcipherKeystream **out);

/*
 Writes the next `len` keystream bytes to `buf`.

 # Safety
 `stream` must be a live handle; `buf` must hold `len` writable bytes.
 */
ImgcipherStatus imgcipher_keystream_fill(struct ImgcipherKeystream *stream,
                                         uint8_t *buf,
                                         size_t len);

/*
 Advances the stream as if `n` bytes were drawn.

 # Safety
 `stream` must be a live handle.
 */
ImgcipherStatus imgcipher_keystream_skip(struct ImgcipherKeystream *stream, uint64_t n);

/*
 # Safety
 `stream` must be NULL or a handle not yet freed.
 */
void imgcipher_keystream_free(struct ImgcipherKeystream *stream);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IMGCIPHER_H */
