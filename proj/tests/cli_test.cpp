/* Copyright 2026 The detassess Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <algorithm>

#include <gtest/gtest.h>

#include "cli_util.hpp"
#include "detassess/detassess.hpp"
#include "oracles.hpp"

namespace detassess {
namespace {

namespace fs = std::filesystem;
using testing::run_cli;
using testing::write_bytes;
using testing::write_text;

const std::string kFixtures = DETASSESS_FIXTURES;
const std::string kGolden = kFixtures + "/golden";
const std::string kScene = std::string(DETASSESS_DATA) + "/sample_destroyer_scene.json";

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = oracle::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  void TearDown() override { fs::remove_all(dir_); }

  // images/ + labels/ holding 3 images, 5 boxes, 2 classes.
  fs::path make_darknet() {
    const fs::path root = dir_ / "yolo";
    write_bytes(root / "images/a.png", png_header_bytes({100, 80}));
    write_bytes(root / "images/b.png", png_header_bytes({64, 64}));
    write_bytes(root / "images/c.png", png_header_bytes({200, 100}));
    write_text(root / "labels/a.txt", "0 0.5 0.5 0.2 0.25\n1 0.25 0.25 0.1 0.1\n");
    write_text(root / "labels/b.txt", "1 0.5 0.5 1 1\n0 0.125 0.875 0.25 0.25\n");
    write_text(root / "labels/c.txt", "0 0.75 0.5 0.5 0.5\n");
    write_text(root / "labels/classes.txt", "spy_radar\nvls\n");
    return root;
  }

  testing::CliResult golden_eval(std::vector<std::string> extra) {
    std::vector<std::string> args = {"evaluate", "--gt", kGolden + "/manifest.json", "--pred",
                                     kGolden + "/detections.jsonl"};
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(args, dir_);
  }

  fs::path dir_;
};

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run_cli({"--help"}, dir_).exit_code, 0);
  EXPECT_EQ(run_cli({"--version"}, dir_).exit_code, 0);
  EXPECT_EQ(run_cli({}, dir_).exit_code, 2);
  EXPECT_EQ(run_cli({"bogus"}, dir_).exit_code, 2);
  EXPECT_EQ(run_cli({"evaluate", "--gt", "x"}, dir_).exit_code, 2);
  EXPECT_EQ(run_cli({"convert", "--from", "xml", "--to", "coco", "--in", "a", "--out", "b"}, dir_)
                .exit_code,
            2);
}

TEST_F(Cli, ConvertConservesBoxesAcrossFormats) {
  const auto yolo = make_darknet();
  const auto native = dir_ / "m.json";
  const auto coco = dir_ / "c.json";
  const auto native2 = dir_ / "m2.json";
  auto r = run_cli({"convert", "--from", "darknet-dir", "--to", "native-manifest", "--in",
                    yolo.string(), "--out", native.string(), "--split", "train"},
                   dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("3 images, 5 boxes"), std::string::npos) << r.out;
  r = run_cli({"convert", "--from", "native", "--to", "coco", "--in", native.string(), "--out",
               coco.string()},
              dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = run_cli({"convert", "--from", "coco", "--to", "native", "--in", coco.string(), "--out",
               native2.string()},
              dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;

  const auto m1 = parse_manifest(detail::read_file(native));
  const auto m2 = parse_manifest(detail::read_file(native2));
  EXPECT_EQ(m1.box_count(), 5u);
  EXPECT_EQ(m2.box_count(), 5u);
  EXPECT_EQ(m2.split_name, "train");
  ASSERT_EQ(m1.images.size(), m2.images.size());
  for (std::size_t i = 0; i < m1.images.size(); ++i) {
    ASSERT_EQ(m1.images[i].image_id, m2.images[i].image_id);
    ASSERT_EQ(m1.images[i].boxes.size(), m2.images[i].boxes.size());
    for (std::size_t b = 0; b < m1.images[i].boxes.size(); ++b) {
      const auto& x = m1.images[i].boxes[b].box;
      const auto& y = m2.images[i].boxes[b].box;
      EXPECT_NEAR(x.x_min, y.x_min, 1e-6);
      EXPECT_NEAR(x.y_min, y.y_min, 1e-6);
      EXPECT_NEAR(x.x_max, y.x_max, 1e-6);
      EXPECT_NEAR(x.y_max, y.y_max, 1e-6);
    }
  }

  const auto back = dir_ / "back";
  r = run_cli({"convert", "--from", "native", "--to", "darknet", "--in", native2.string(),
               "--out", back.string()},
              dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(detail::read_file(back / "labels/classes.txt"), "spy_radar\nvls\n");
  for (const std::string stem : {"a", "b", "c"}) {
    const auto orig = parse_yolo_labels(detail::read_file(yolo / "labels" / (stem + ".txt")),
                                        {100, 100}, stem);
    const auto again = parse_yolo_labels(detail::read_file(back / "labels" / (stem + ".txt")),
                                         {100, 100}, stem);
    ASSERT_EQ(orig.size(), again.size());
    for (std::size_t i = 0; i < orig.size(); ++i) {
      EXPECT_EQ(orig[i].class_id, again[i].class_id);
      EXPECT_NEAR(orig[i].box.x_min, again[i].box.x_min, 1e-6);
      EXPECT_NEAR(orig[i].box.y_max, again[i].box.y_max, 1e-6);
    }
  }
}

TEST_F(Cli, ConvertReportsMalformedLabelWithLocation) {
  const auto yolo = make_darknet();
  write_text(yolo / "labels/b.txt", "1 0.5 0.5 1 1\n0 0.1 0.2\n");
  const auto r = run_cli({"convert", "--from", "darknet", "--to", "native", "--in",
                          yolo.string(), "--out", (dir_ / "m.json").string()},
                         dir_);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("b.txt:2"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "m.json"));
}

TEST_F(Cli, ConvertRefusesInvalidDatasetUnlessForced) {
  auto m = parse_manifest(detail::read_file(kGolden + "/manifest.json"));
  m.images[0].boxes[0].box.x_max = 1e6;
  const auto bad = dir_ / "bad.json";
  write_text(bad, write_manifest(m));
  const auto out = dir_ / "out.json";
  auto r = run_cli({"convert", "--from", "native", "--to", "coco", "--in", bad.string(), "--out",
                    out.string()},
                   dir_);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("violation"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));
  r = run_cli({"convert", "--from", "native", "--to", "coco", "--in", bad.string(), "--out",
               out.string(), "--force"},
              dir_);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(fs::exists(out));
}

TEST_F(Cli, EvaluateGoldenReportIsByteIdentical) {
  const auto out = dir_ / "report.json";
  const auto r = golden_eval({"--iou", "0.5", "--out", out.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(detail::read_file(out), detail::read_file(kGolden + "/expected_report.json"));
  EXPECT_NE(r.out.find("| all | 0.9167 | 0.8333 | 1.0000 |"), std::string::npos) << r.out;
}

TEST_F(Cli, EvaluateEchoesConfigAndWritesTables) {
  const auto out = dir_ / "report.json";
  const auto csv = dir_ / "report.csv";
  const auto md = dir_ / "report.md";
  const auto r = golden_eval({"--iou", "0.7", "--ap-mode", "101", "--out", out.string(), "--csv",
                              csv.string(), "--md", md.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto text = detail::read_file(out);
  EXPECT_NE(text.find("\"iou_threshold\": 0.7000"), std::string::npos);
  EXPECT_NE(text.find("\"ap_mode\": \"interp_101\""), std::string::npos);
  EXPECT_EQ(line_count(detail::read_file(csv)), 2u + 1u);
  EXPECT_NE(detail::read_file(md).find("| all |"), std::string::npos);
}

TEST_F(Cli, EvaluateErrors) {
  const auto out = dir_ / "report.json";
  // Detection on an image the manifest does not list.
  const auto dets = dir_ / "dets.jsonl";
  write_text(dets, detail::read_file(kGolden + "/detections.jsonl") +
                       R"({"image_id": "img_z", "class_id": 0, "bbox": [0, 0, 1, 1], "score": 0.5})"
                       "\n");
  auto r = run_cli({"evaluate", "--gt", kGolden + "/manifest.json", "--pred", dets.string(),
                    "--out", out.string()},
                   dir_);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("img_z"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out));

  const auto overlapping = dir_ / "strata.json";
  write_text(overlapping, write_strata({{"a", {"img_a", "img_b"}}, {"b", {"img_b"}}}));
  r = golden_eval({"--strata", overlapping.string(), "--out", out.string()});
  EXPECT_EQ(r.exit_code, 3);

  const auto unknown = dir_ / "unknown.json";
  write_text(unknown, write_strata({{"a", {"img_q"}}}));
  EXPECT_EQ(golden_eval({"--strata", unknown.string(), "--out", out.string()}).exit_code, 3);

  EXPECT_EQ(golden_eval({"--iou", "0", "--out", out.string()}).exit_code, 2);
  EXPECT_EQ(golden_eval({"--iou", "1.5", "--out", out.string()}).exit_code, 2);
  EXPECT_EQ(golden_eval({"--ap-mode", "coco", "--out", out.string()}).exit_code, 2);
  EXPECT_EQ(golden_eval({"--out", kGolden + "/manifest.json"}).exit_code, 2);

  const auto broken = dir_ / "broken.jsonl";
  write_text(broken, "{\"image_id\": \"img_a\", \"class_id\": 0, \"bbox\": [0,0,1,1], \"score\": 2}\n");
  r = run_cli({"evaluate", "--gt", kGolden + "/manifest.json", "--pred", broken.string(),
               "--out", out.string()},
              dir_);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST_F(Cli, EvaluateWithStrata) {
  const auto strata = dir_ / "strata.json";
  write_text(strata, write_strata({{"ab", {"img_a", "img_b"}}, {"c", {"img_c"}}}));
  const auto out = dir_ / "report.json";
  const auto r = golden_eval({"--strata", strata.string(), "--out", out.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rep = parse_report(detail::read_file(out));
  ASSERT_EQ(rep.strata.size(), 3u);
  EXPECT_EQ(rep.strata[0].first, "all");
  EXPECT_EQ(rep.strata[1].first, "ab");
  EXPECT_EQ(rep.strata[2].second.images, 1u);
}

TEST_F(Cli, PlanIsDeterministicAndPartitionsPoses) {
  const auto a = dir_ / "a";
  const auto b = dir_ / "b";
  auto r = run_cli({"plan", "--scene", kScene, "--poses", "50", "--out", a.string()}, dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = run_cli({"plan", "--scene", kScene, "--poses", "50", "--out", b.string()}, dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  for (const char* f : {"plan.json", "manifest.json", "strata.json"}) {
    EXPECT_EQ(detail::read_file(a / f), detail::read_file(b / f)) << f;
  }
  const auto strata = parse_strata(detail::read_file(a / "strata.json"));
  std::size_t total = 0;
  for (const auto& [name, ids] : strata) total += ids.size();
  EXPECT_EQ(total, 50u);
  EXPECT_EQ(parse_manifest(detail::read_file(a / "manifest.json")).images.size(), 50u);

  // Seeded jitter is reproducible too and differs from the lattice.
  const auto c = dir_ / "c";
  const auto d = dir_ / "d";
  ASSERT_EQ(run_cli({"plan", "--scene", kScene, "--poses", "50", "--seed", "3", "--out",
                     c.string()},
                    dir_)
                .exit_code,
            0);
  ASSERT_EQ(run_cli({"plan", "--scene", kScene, "--poses", "50", "--seed", "3", "--out",
                     d.string()},
                    dir_)
                .exit_code,
            0);
  EXPECT_EQ(detail::read_file(c / "plan.json"), detail::read_file(d / "plan.json"));
  EXPECT_NE(detail::read_file(c / "plan.json"), detail::read_file(a / "plan.json"));
}

TEST_F(Cli, PlanPortSideViewsListPortArrayOnly) {
  const auto out = dir_ / "plan";
  ASSERT_EQ(run_cli({"plan", "--scene", kScene, "--poses", "128", "--min-elev", "0", "--out",
                     out.string()},
                    dir_)
                .exit_code,
            0);
  const auto doc = nlohmann::json::parse(detail::read_file(out / "plan.json"));
  std::size_t checked = 0;
  for (const auto& v : doc.at("views")) {
    const double az = v.at("azimuth_deg").get<double>();
    const double el = v.at("elevation_deg").get<double>();
    if (!(az > 45 && az < 135 && el < 60)) continue;
    std::set<std::string> names;
    for (const auto& b : v.at("boxes")) names.insert(b.at("name").get<std::string>());
    EXPECT_TRUE(names.count("port SPY array")) << v.at("pose_id");
    EXPECT_FALSE(names.count("starboard SPY array")) << v.at("pose_id");
    ++checked;
  }
  EXPECT_GT(checked, 3u);
}

TEST_F(Cli, PlanErrors) {
  const auto out = dir_ / "plan";
  EXPECT_EQ(run_cli({"plan", "--scene", (dir_ / "missing.json").string(), "--out", out.string()},
                    dir_)
                .exit_code,
            2);
  const auto bad = dir_ / "bad.json";
  write_text(bad, "{\"bounding_radius\": 10, \"components\": [}");
  EXPECT_EQ(run_cli({"plan", "--scene", bad.string(), "--out", out.string()}, dir_).exit_code, 2);
  EXPECT_EQ(run_cli({"plan", "--scene", kScene, "--radius", "50", "--out", out.string()}, dir_)
                .exit_code,
            2);
}

TEST_F(Cli, RecipeAndReport) {
  const auto recipe = dir_ / "recipe.json";
  ASSERT_EQ(run_cli({"recipe", "--out", recipe.string()}, dir_).exit_code, 0);
  EXPECT_EQ(parse_recipe(detail::read_file(recipe)), TrainingRecipe{});

  const std::string in = kFixtures + "/strata_summary_report.json";
  for (const std::string fmt : {"md", "csv", "svg"}) {
    const auto out = dir_ / ("r." + fmt);
    const auto r = run_cli({"report", "--in", in, "--format", fmt, "--out", out.string()}, dir_);
    ASSERT_EQ(r.exit_code, 0) << fmt << r.err;
    EXPECT_TRUE(fs::file_size(out) > 0);
  }
  EXPECT_EQ(line_count(detail::read_file(dir_ / "r.csv")), 7u);
  EXPECT_EQ(run_cli({"report", "--in", in, "--format", "pdf", "--out", (dir_ / "x").string()},
                    dir_)
                .exit_code,
            2);
  const auto junk = dir_ / "junk.json";
  write_text(junk, "nope");
  EXPECT_EQ(run_cli({"report", "--in", junk.string(), "--format", "md", "--out",
                     (dir_ / "x").string()},
                    dir_)
                .exit_code,
            2);
}

}  // namespace
}  // namespace detassess
