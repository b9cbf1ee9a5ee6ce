#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace comrdf;
namespace ts = testing_support;

namespace {

std::vector<SiteLabel> labels(std::size_t n) {
  std::vector<SiteLabel> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({"C" + std::to_string(i % 3), 12.011, 0.0});
  return out;
}

std::vector<Frame> random_frames(int nframes, std::size_t natoms, int keytrj = 0) {
  std::vector<Frame> out;
  for (int k = 0; k < nframes; ++k) {
    Frame f;
    f.step = 100 * (k + 1);
    f.natoms = static_cast<long long>(natoms);
    f.keytrj = keytrj;
    f.timestep = 0.001;
    f.cell = CellTensor({20.0 + k, 0, 0}, {0.5, 21, 0}, {0, -0.25, 19}, ImageConvention::parallelepiped);
    for (std::size_t i = 0; i < natoms; ++i)
      f.positions.push_back({ts::uniform(-10, 10), ts::uniform(-10, 10), ts::uniform(-10, 10)});
    out.push_back(f);
  }
  return out;
}

std::string history_text(const std::vector<Frame>& frames, bool header) {
  std::ostringstream os;
  const auto lab = labels(frames.front().positions.size());
  if (header)
    write_history_header(os, "test trajectory", 3, static_cast<long long>(lab.size()));
  for (const auto& f : frames)
    write_history_frame(os, f, lab);
  return os.str();
}

std::string drop_last_lines(const std::string& s, int n) {
  auto end = s.size();
  if (!s.empty() && s.back() == '\n')
    --end;
  for (int i = 0; i < n; ++i)
    end = s.rfind('\n', end - 1);
  return s.substr(0, end + 1);
}

struct ReadAll {
  std::vector<Frame> frames;
  ReadStatus status;
  bool header;
};

ReadAll read_all(const std::string& txt, std::optional<long long> natoms = {}) {
  std::istringstream is(txt);
  HistoryReader r(is, natoms);
  ReadAll out{{}, ReadStatus::frame, r.has_header()};
  Frame f;
  while ((out.status = r.next(f)) == ReadStatus::frame)
    out.frames.push_back(f);
  return out;
}

} // namespace

TEST(History, HeaderedTwoFrames) {
  const auto frames = random_frames(2, 5);
  const auto res = read_all(history_text(frames, true), 5);
  EXPECT_TRUE(res.header);
  EXPECT_EQ(res.status, ReadStatus::end_of_data);
  ASSERT_EQ(res.frames.size(), 2u);
  EXPECT_EQ(res.frames[0].step, 100);
  EXPECT_EQ(res.frames[1].step, 200);
  EXPECT_EQ(res.frames[1].cell.imcon(), ImageConvention::parallelepiped);
  EXPECT_DOUBLE_EQ(res.frames[1].cell.a().x, 21.0);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_NEAR(res.frames[k].positions[i].x, frames[k].positions[i].x, 1e-9);
      EXPECT_NEAR(res.frames[k].positions[i].y, frames[k].positions[i].y, 1e-9);
      EXPECT_NEAR(res.frames[k].positions[i].z, frames[k].positions[i].z, 1e-9);
    }
}

TEST(History, HeaderlessGivesSameFrames) {
  const auto frames = random_frames(3, 4);
  const auto a = read_all(history_text(frames, true));
  const auto b = read_all(history_text(frames, false));
  EXPECT_FALSE(b.header);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t k = 0; k < a.frames.size(); ++k) {
    EXPECT_EQ(a.frames[k].step, b.frames[k].step);
    EXPECT_EQ(a.frames[k].positions, b.frames[k].positions);
  }
  EXPECT_EQ(b.status, ReadStatus::end_of_data);
}

TEST(History, EmptyFileIsAbnormalWithNoFrames) {
  const auto res = read_all("");
  EXPECT_TRUE(res.frames.empty());
  EXPECT_EQ(res.status, ReadStatus::truncated);
  EXPECT_EQ(read_all("\n\n  \n").status, ReadStatus::truncated);
}

TEST(History, TruncatedLastFrame) {
  const auto txt = history_text(random_frames(2, 3), true);
  const auto res = read_all(drop_last_lines(txt, 5));
  EXPECT_EQ(res.frames.size(), 1u);
  EXPECT_EQ(res.status, ReadStatus::truncated);
}

TEST(History, FrameCountEqualsCompleteRecordsForAnyCut) {
  const int nframes = 3;
  const std::size_t natoms = 4;
  const auto txt = history_text(random_frames(nframes, natoms), true);
  const int lines_per_frame = 1 + 3 + 2 * static_cast<int>(natoms);
  const int total = 2 + nframes * lines_per_frame;
  for (int cut = 0; cut <= total - 2; ++cut) {
    const auto res = read_all(drop_last_lines(txt, cut));
    const int kept_body = total - cut - 2;
    const int complete = kept_body / lines_per_frame;
    EXPECT_EQ(static_cast<int>(res.frames.size()), complete) << "cut=" << cut;
    const bool clean = kept_body % lines_per_frame == 0;
    EXPECT_EQ(res.status, clean ? ReadStatus::end_of_data : ReadStatus::truncated) << "cut=" << cut;
  }
}

TEST(History, VelocitiesAndForcesSkipped) {
  auto frames = random_frames(2, 3, 0);
  const auto plain = read_all(history_text(frames, true));

  // Same coordinates, written with velocity and force lines carrying data.
  std::ostringstream os;
  write_history_header(os, "keytrj 2", 3, 3, 2);
  for (auto f : frames) {
    f.keytrj = 2;
    std::ostringstream one;
    write_history_frame(one, f, labels(3));
    std::string s = one.str();
    std::string filled;
    std::size_t pos = 0;
    while (pos < s.size()) {
      auto nl = s.find('\n', pos);
      std::string line = s.substr(pos, nl - pos);
      if (line == "        0.0000000000        0.0000000000        0.0000000000")
        line = "  -1.25e+01  3.5  7.75";
      filled += line + "\n";
      pos = nl + 1;
    }
    os << filled;
  }
  const auto full = read_all(os.str(), 3);
  ASSERT_EQ(full.frames.size(), plain.frames.size());
  for (std::size_t k = 0; k < full.frames.size(); ++k) {
    EXPECT_EQ(full.frames[k].keytrj, 2);
    EXPECT_EQ(full.frames[k].positions, plain.frames[k].positions);
  }
}

TEST(History, NonPeriodicFrameHasNoCellLines) {
  const std::string txt =
    "timestep 10 2 0 0 0.001\n"
    "A 1 1.0 0.0\n1.0 2.0 3.0\n"
    "B 2 1.0 0.0\n-1.0 -2.0 -3.0\n";
  const auto res = read_all(txt, 2);
  ASSERT_EQ(res.frames.size(), 1u);
  EXPECT_FALSE(res.frames[0].cell.periodic());
  EXPECT_EQ(res.frames[0].positions[1], (Vec3{-1, -2, -3}));
}

TEST(History, NonNumericCoordinateIsTruncation) {
  auto txt = history_text(random_frames(2, 2), true);
  const auto pos = txt.rfind("timestep");
  auto bad = txt.substr(0, pos) + "timestep 200 2 0 3 0.001\n20 0 0\n0 20 0\n0 0 20\nA 1 1 0\nnan? x y\n";
  const auto res = read_all(bad);
  EXPECT_EQ(res.frames.size(), 1u);
  EXPECT_EQ(res.status, ReadStatus::truncated);
}

TEST(History, NatomsMismatchIsFatal) {
  const auto txt = history_text(random_frames(1, 3), true);
  EXPECT_THROW(read_all(txt, 4), InputError);
}

TEST(History, UnrecognisedFirstRecordIsFatal) {
  EXPECT_THROW(read_all("garbage line\nmore garbage here\n"), InputError);
  EXPECT_THROW(read_all("title\n0 1 2\nnot a timestep\n"), InputError);
  EXPECT_THROW(read_all("only a title line\n"), InputError);
}

TEST(History, UnsupportedImconIsFatal) {
  EXPECT_THROW(read_all("timestep 1 1 0 4 0.001\n10 0 0\n0 10 0\n0 0 10\nA 1 1 0\n0 0 0\n"),
               InputError);
}

TEST(History, HeaderOnlyFileHasNoFrames) {
  const auto res = read_all("title\n0 3 10\n");
  EXPECT_TRUE(res.header);
  EXPECT_TRUE(res.frames.empty());
  EXPECT_EQ(res.status, ReadStatus::end_of_data);
}
