#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <vector>

#include "speechml/audio.hpp"
#include "speechml/errors.hpp"
#include "speechml/shortterm.hpp"
#include "support/helpers.hpp"

using namespace speechml;

namespace {

MagnitudeSpectrum flat_spectrum(std::size_t bins, double bin_hz,
                                double value = 1.0) {
  MagnitudeSpectrum s;
  s.bin_hz = bin_hz;
  s.bins.assign(bins, value);
  return s;
}

MagnitudeSpectrum windowed_tone_spectrum(double freq, int sr,
                                         std::size_t len) {
  auto tone = testsupport::sine(freq, sr, len, 0.7);
  const auto w = hamming_window(len);
  for (std::size_t n = 0; n < len; ++n) {
    tone[n] *= w[n];
  }
  return magnitude_spectrum(tone, sr);
}

}  // namespace

TEST_CASE("zero crossing rate") {
  SUBCASE("100 Hz sine at 8 kHz crosses ~10 times per 400-sample frame") {
    const auto frame = testsupport::sine(100.0, 8000, 400, 0.5, 0.1);
    const double zcr = zero_crossing_rate(frame);
    CHECK(std::abs(zcr - 10.0 / 399.0) <= 1.0 / 399.0);
  }
  SUBCASE("constant positive frame has none") {
    const std::vector<double> frame(64, 0.3);
    CHECK(zero_crossing_rate(frame) == 0.0);
  }
  SUBCASE("alternating signs cross every step") {
    std::vector<double> frame(64);
    for (std::size_t i = 0; i < frame.size(); ++i) {
      frame[i] = i % 2 == 0 ? 1.0 : -1.0;
    }
    CHECK(zero_crossing_rate(frame) == 1.0);
  }
}

TEST_CASE("short-time energy") {
  CHECK(short_energy(std::vector<double>(100, 0.0)) == 0.0);
  CHECK(short_energy(std::vector<double>(100, 1.0)) == 1.0);
  CHECK(short_energy(std::vector<double>{-1.0, 1.0, -1.0, 1.0}) == 1.0);
  // A^2/2 for whole periods
  const auto sine = testsupport::sine(100.0, 8000, 400, 0.6);
  CHECK(short_energy(sine) ==
        doctest::Approx(0.6 * 0.6 / 2.0).epsilon(0.01));
}

TEST_CASE("energy entropy") {
  SUBCASE("uniform energy maximizes entropy") {
    std::vector<double> frame(400);
    for (std::size_t i = 0; i < frame.size(); ++i) {
      frame[i] = i % 2 == 0 ? 0.5 : -0.5;
    }
    CHECK(energy_entropy(frame) ==
          doctest::Approx(std::log2(10.0)).epsilon(1e-9));
  }
  SUBCASE("all energy in one sub-frame is zero entropy") {
    std::vector<double> frame(400, 0.0);
    for (std::size_t i = 0; i < 40; ++i) {
      frame[i] = 0.9;
    }
    CHECK(energy_entropy(frame) == 0.0);
  }
  SUBCASE("silence maps to zero") {
    CHECK(energy_entropy(std::vector<double>(400, 0.0)) == 0.0);
  }
  SUBCASE("invariant to amplitude scaling") {
    const auto frame = testsupport::white_noise(400, 8);
    std::vector<double> scaled(frame);
    for (double& s : scaled) {
      s *= 7.5;
    }
    CHECK(energy_entropy(scaled) ==
          doctest::Approx(energy_entropy(frame)).epsilon(1e-9));
  }
}

TEST_CASE("spectral centroid and spread") {
  SUBCASE("1 kHz tone at 16 kHz lands within 40 Hz") {
    const auto spec = windowed_tone_spectrum(1000.0, 16000, 800);
    const auto [centroid, spread] = spectral_centroid_spread(spec);
    CHECK(std::abs(centroid - 1000.0) <= 40.0);
    CHECK(spread < 100.0);
  }
  SUBCASE("flat spectrum centers at half Nyquist") {
    const auto spec = flat_spectrum(401, 20.0);  // Nyquist 8000
    const auto [centroid, spread] = spectral_centroid_spread(spec);
    CHECK(centroid == doctest::Approx(4000.0).epsilon(1e-9));
    CHECK(spread > 0.0);
  }
  SUBCASE("all-zero spectrum yields zeros") {
    const auto spec = flat_spectrum(401, 20.0, 0.0);
    const auto [centroid, spread] = spectral_centroid_spread(spec);
    CHECK(centroid == 0.0);
    CHECK(spread == 0.0);
  }
}

TEST_CASE("spectral rolloff") {
  SUBCASE("pure tone rolls off at the tone") {
    const auto spec = windowed_tone_spectrum(1000.0, 16000, 800);
    CHECK(std::abs(spectral_rolloff(spec) - 1000.0) <= spec.bin_hz);
  }
  SUBCASE("flat power spectrum rolls off at c * Nyquist") {
    const auto spec = flat_spectrum(401, 20.0);
    CHECK(std::abs(spectral_rolloff(spec, 0.90) - 0.9 * 8000.0) <= 20.0);
    CHECK(std::abs(spectral_rolloff(spec, 0.50) - 0.5 * 8000.0) <= 20.0);
  }
  SUBCASE("c outside (0,1) is rejected") {
    const auto spec = flat_spectrum(401, 20.0);
    CHECK_THROWS_AS((void)spectral_rolloff(spec, 1.0), InvalidArgument);
    CHECK_THROWS_AS((void)spectral_rolloff(spec, 0.0), InvalidArgument);
  }
  SUBCASE("all-zero spectrum rolls off at zero") {
    const auto spec = flat_spectrum(401, 20.0, 0.0);
    CHECK(spectral_rolloff(spec) == 0.0);
  }
}

TEST_CASE("spectral flux") {
  const auto a = windowed_tone_spectrum(500.0, 16000, 800);
  SUBCASE("identical frames have zero flux") {
    CHECK(spectral_flux(a, a) == 0.0);
  }
  SUBCASE("one-hot spectra at different bins give 2") {
    MagnitudeSpectrum p = flat_spectrum(10, 20.0, 0.0);
    MagnitudeSpectrum q = flat_spectrum(10, 20.0, 0.0);
    p.bins[2] = 5.0;
    q.bins[7] = 3.0;
    CHECK(spectral_flux(p, q) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("scaling either frame leaves flux unchanged") {
    const auto b = windowed_tone_spectrum(900.0, 16000, 800);
    MagnitudeSpectrum b_scaled = b;
    for (double& v : b_scaled.bins) {
      v *= 4.0;
    }
    CHECK(spectral_flux(a, b_scaled) ==
          doctest::Approx(spectral_flux(a, b)).epsilon(1e-12));
  }
  SUBCASE("bin mismatch is rejected") {
    const auto small = flat_spectrum(10, 20.0);
    CHECK_THROWS_AS((void)spectral_flux(a, small), BinMismatch);
  }
}

TEST_CASE("spectral entropy") {
  SUBCASE("single hot band is zero") {
    MagnitudeSpectrum spec = flat_spectrum(100, 20.0, 0.0);
    spec.bins[3] = 1.0;
    CHECK(spectral_entropy(spec) == 0.0);
  }
  SUBCASE("equal power per band maximizes entropy") {
    const auto spec = flat_spectrum(100, 20.0);
    CHECK(spectral_entropy(spec) ==
          doctest::Approx(std::log2(10.0)).epsilon(1e-9));
  }
  SUBCASE("noise is more entropic than a tone") {
    const auto noise = magnitude_spectrum(
        testsupport::white_noise(800, 3), 16000);
    const auto tone = windowed_tone_spectrum(1000.0, 16000, 800);
    CHECK(spectral_entropy(noise) > spectral_entropy(tone));
  }
}

TEST_CASE("mfcc") {
  const MelFilterbank fb = build_mel_filterbank(16000, 800, 26);
  SUBCASE("13 coefficients, finite for silence") {
    const auto silent = magnitude_spectrum(std::vector<double>(800, 0.0),
                                           16000);
    const auto c = mfcc(silent, fb);
    CHECK(c.size() == 13);
    for (double v : c) {
      CHECK(std::isfinite(v));
    }
  }
  SUBCASE("gain affects only c0") {
    auto frame = testsupport::white_noise(800, 21);
    std::vector<double> doubled(frame);
    for (double& s : doubled) {
      s *= 2.0;
    }
    const auto c1 = mfcc(magnitude_spectrum(frame, 16000), fb);
    const auto c2 = mfcc(magnitude_spectrum(doubled, 16000), fb);
    CHECK(std::abs(c2[0] - c1[0]) > 1e-6);
    for (std::size_t j = 1; j < c1.size(); ++j) {
      CHECK(std::abs(c2[j] - c1[j]) <= 1e-6);
    }
  }
}

TEST_CASE("chroma") {
  SUBCASE("440 Hz and 880 Hz both map to class A") {
    const auto c440 = chroma(windowed_tone_spectrum(440.0, 16000, 800));
    const auto c880 = chroma(windowed_tone_spectrum(880.0, 16000, 800));
    const auto argmax = [](const std::array<double, 12>& v) {
      return std::distance(v.begin(), std::max_element(v.begin(), v.end()));
    };
    CHECK(argmax(c440) == 9);
    CHECK(argmax(c880) == 9);
  }
  SUBCASE("non-silent chroma sums to one") {
    const auto c = chroma(windowed_tone_spectrum(523.25, 16000, 800));
    double total = 0.0;
    for (double v : c) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("silent frame is all zeros") {
    const auto silent = magnitude_spectrum(std::vector<double>(800, 0.0),
                                           16000);
    for (double v : chroma(silent)) {
      CHECK(v == 0.0);
    }
  }
}

TEST_CASE("aggregate_frames") {
  SUBCASE("single frame passes through with zero flux") {
    FrameFeatures f;
    f.zcr = 0.25;
    f.energy = 0.5;
    f.flux = 0.9;  // ignored: no predecessor
    f.mfcc[3] = -1.5;
    const std::vector<FrameFeatures> frames = {f};
    const FrameFeatures mean = aggregate_frames(frames);
    CHECK(mean.zcr == 0.25);
    CHECK(mean.energy == 0.5);
    CHECK(mean.flux == 0.0);
    CHECK(mean.mfcc[3] == -1.5);
  }
  SUBCASE("matches an independent recomputation") {
    speechml::Rng rng(31);
    std::vector<FrameFeatures> frames(17);
    for (auto& f : frames) {
      f.zcr = next_unit(rng);
      f.energy = next_unit(rng);
      f.energy_entropy = next_unit(rng);
      f.centroid = next_unit(rng) * 4000;
      f.spread = next_unit(rng) * 1000;
      f.rolloff = next_unit(rng) * 8000;
      f.flux = next_unit(rng);
      f.spectral_entropy = next_unit(rng);
      for (double& m : f.mfcc) {
        m = next_unit(rng) - 0.5;
      }
      for (double& c : f.chroma) {
        c = next_unit(rng);
      }
    }
    const FrameFeatures mean = aggregate_frames(frames);

    double zcr = 0.0, flux = 0.0, mfcc5 = 0.0, chroma7 = 0.0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      zcr += frames[i].zcr;
      mfcc5 += frames[i].mfcc[5];
      chroma7 += frames[i].chroma[7];
      if (i > 0) {
        flux += frames[i].flux;
      }
    }
    CHECK(mean.zcr == doctest::Approx(zcr / 17.0).epsilon(1e-12));
    CHECK(mean.flux == doctest::Approx(flux / 16.0).epsilon(1e-12));
    CHECK(mean.mfcc[5] == doctest::Approx(mfcc5 / 17.0).epsilon(1e-12));
    CHECK(mean.chroma[7] == doctest::Approx(chroma7 / 17.0).epsilon(1e-12));
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS((void)aggregate_frames({}), EmptyInput);
  }
}

TEST_CASE("gain invariance of the normalized short-term features") {
  const auto frame = testsupport::white_noise(800, 55);
  std::vector<double> scaled(frame);
  for (double& s : scaled) {
    s *= 3.7;
  }
  const auto a = magnitude_spectrum(frame, 16000);
  const auto b = magnitude_spectrum(scaled, 16000);

  CHECK(zero_crossing_rate(scaled) == zero_crossing_rate(frame));
  CHECK(energy_entropy(scaled) ==
        doctest::Approx(energy_entropy(frame)).epsilon(1e-9));
  CHECK(spectral_centroid_spread(b).first ==
        doctest::Approx(spectral_centroid_spread(a).first).epsilon(1e-9));
  CHECK(spectral_rolloff(b) == doctest::Approx(spectral_rolloff(a)));
  CHECK(spectral_entropy(b) ==
        doctest::Approx(spectral_entropy(a)).epsilon(1e-9));
  const auto ca = chroma(a);
  const auto cb = chroma(b);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    CHECK(cb[i] == doctest::Approx(ca[i]).epsilon(1e-9));
  }
  // not gain-invariant: energy
  CHECK(short_energy(scaled) > short_energy(frame));
}
