#include "speechml/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

#include "speechml/errors.hpp"

namespace speechml {

namespace {

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileNotFound("cannot open WAV file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw MalformedWav("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const std::uint8_t* data_ptr = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* hdr = bytes.data() + pos;
    const std::uint32_t chunk_size = read_u32(hdr + 4);
    const std::size_t payload = pos + 8;
    if (payload + chunk_size > bytes.size()) {
      throw MalformedWav("truncated chunk in " + path.string());
    }
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw MalformedWav("fmt chunk too small in " + path.string());
      }
      format = read_u16(bytes.data() + payload);
      channels = read_u16(bytes.data() + payload + 2);
      sample_rate = read_u32(bytes.data() + payload + 4);
      bits = read_u16(bytes.data() + payload + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data_ptr = bytes.data() + payload;
      data_size = chunk_size;
    }
    pos = payload + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_ptr == nullptr) {
    throw MalformedWav("missing fmt or data chunk in " + path.string());
  }
  if (format != 1 || bits != 16) {
    throw UnsupportedFormat("only PCM signed 16-bit is supported: " +
                            path.string());
  }
  if (channels < 1 || channels > 2) {
    throw UnsupportedFormat("unsupported channel count " +
                            std::to_string(channels) + ": " + path.string());
  }
  if (sample_rate < static_cast<std::uint32_t>(kMinSampleRate)) {
    throw UnsupportedFormat("sample rate below 8000 Hz: " + path.string());
  }

  const std::size_t block = 2u * channels;
  if (data_size % block != 0) {
    throw MalformedWav("data chunk size is not a whole number of frames: " +
                       path.string());
  }
  const std::size_t n_frames = data_size / block;
  if (n_frames == 0) {
    throw MalformedWav("empty data chunk: " + path.string());
  }

  AudioSignal out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.samples.resize(n_frames);
  constexpr double scale = 1.0 / 32768.0;
  for (std::size_t i = 0; i < n_frames; ++i) {
    const std::uint8_t* p = data_ptr + i * block;
    const auto s0 = static_cast<std::int16_t>(read_u16(p));
    if (channels == 1) {
      out.samples[i] = s0 * scale;
    } else {
      const auto s1 = static_cast<std::int16_t>(read_u16(p + 2));
      out.samples[i] = (static_cast<double>(s0) + s1) * 0.5 * scale;
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioSignal& signal) {
  if (signal.samples.empty() || signal.sample_rate < kMinSampleRate) {
    throw InvalidArgument("write_wav: empty signal or bad sample rate");
  }
  const auto n = static_cast<std::uint32_t>(signal.samples.size());
  const std::uint32_t data_size = n * 2;

  std::vector<std::uint8_t> bytes;
  bytes.reserve(44 + data_size);
  put_tag(bytes, "RIFF");
  put_u32(bytes, 36 + data_size);
  put_tag(bytes, "WAVE");
  put_tag(bytes, "fmt ");
  put_u32(bytes, 16);
  put_u16(bytes, 1);  // PCM
  put_u16(bytes, 1);  // mono
  put_u32(bytes, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(bytes, static_cast<std::uint32_t>(signal.sample_rate) * 2);
  put_u16(bytes, 2);   // block align
  put_u16(bytes, 16);  // bits
  put_tag(bytes, "data");
  put_u32(bytes, data_size);
  for (double s : signal.samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    const auto q = static_cast<std::int16_t>(std::lrint(clamped * 32767.0));
    put_u16(bytes, static_cast<std::uint16_t>(q));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("short write: " + path.string());
  }
}

std::vector<double> hamming_window(std::size_t len) {
  std::vector<double> w(len, 1.0);
  if (len < 2) {
    return w;
  }
  const double denom = static_cast<double>(len) - 1.0;
  for (std::size_t n = 0; n < len; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / denom);
  }
  return w;
}

FrameSequence frame_signal(const AudioSignal& signal, double frame_ms,
                           double hop_ms, WindowKind window) {
  if (!(hop_ms > 0.0) || frame_ms < hop_ms) {
    throw InvalidArgument("frame_signal: require frame_ms >= hop_ms > 0");
  }
  const auto frame_len = static_cast<std::size_t>(
      std::lround(frame_ms * signal.sample_rate / 1000.0));
  const auto hop_len = static_cast<std::size_t>(
      std::lround(hop_ms * signal.sample_rate / 1000.0));
  if (frame_len == 0 || hop_len == 0) {
    throw InvalidArgument("frame_signal: frame or hop rounds to zero samples");
  }
  if (signal.samples.size() < frame_len) {
    throw SignalTooShort("signal shorter than one frame (" +
                         std::to_string(signal.samples.size()) + " < " +
                         std::to_string(frame_len) + " samples)");
  }

  const std::size_t count =
      (signal.samples.size() - frame_len) / hop_len + 1;

  FrameSequence seq;
  seq.frame_len = frame_len;
  seq.hop_len = hop_len;
  seq.sample_rate = signal.sample_rate;
  seq.window = window;
  seq.data.resize(count * frame_len);

  const std::vector<double> w = window == WindowKind::hamming
                                    ? hamming_window(frame_len)
                                    : std::vector<double>();
  for (std::size_t i = 0; i < count; ++i) {
    const double* src = signal.samples.data() + i * hop_len;
    double* dst = seq.data.data() + i * frame_len;
    if (w.empty()) {
      std::copy(src, src + frame_len, dst);
    } else {
      for (std::size_t n = 0; n < frame_len; ++n) {
        dst[n] = src[n] * w[n];
      }
    }
  }
  return seq;
}

AudioSignal resample_check(AudioSignal signal) {
  if (signal.sample_rate < kMinSampleRate) {
    throw UnsupportedFormat("sample rate below 8000 Hz: " +
                            std::to_string(signal.sample_rate));
  }
  return signal;
}

}  // namespace speechml
