#include <gtest/gtest.h>

#include <fstream>

#include "reference_systems.hpp"
#include "rifs/config.hpp"
#include "rifs/errors.hpp"
#include "rifs/system_io.hpp"

using namespace rifs;
using nlohmann::json;

TEST(RunConfig, DefaultsFromFlatSystem) {
  const json doc = system_to_json(ref::s1());
  const RunConfig cfg = run_config_from_json(doc);
  EXPECT_EQ(cfg.grid_points, 4001u);
  EXPECT_EQ(cfg.t_nodes, 32);
  EXPECT_EQ(cfg.tol, 1e-10);
  EXPECT_EQ(cfg.max_iter, 500);
  EXPECT_FALSE(cfg.cone.has_value());
  EXPECT_EQ(cfg.system.branches.size(), 2u);
}

TEST(RunConfig, NestedSystemAndRunFields) {
  json doc{{"system", system_to_json(ref::s3())},
           {"grid_points", 1001},
           {"seed", 42},
           {"tol", 1e-9},
           {"cone", {{"a", 0.4}, {"gamma", 0.5}, {"b", 4.0}}}};
  const RunConfig cfg = run_config_from_json(doc);
  EXPECT_EQ(cfg.grid_points, 1001u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.tol, 1e-9);
  ASSERT_TRUE(cfg.cone.has_value());
  EXPECT_EQ(cfg.cone->gamma, 0.5);
  EXPECT_EQ(cfg.system.noise.family(), NoiseFamily::raised_cosine);
}

TEST(RunConfig, RejectsUnknownAndInvalidValues) {
  json doc = system_to_json(ref::s1());
  doc["threads"] = 4;
  EXPECT_THROW(run_config_from_json(doc), ConfigurationError);
  doc = system_to_json(ref::s1());
  doc["grid_points"] = 1000;
  EXPECT_THROW(run_config_from_json(doc), ConfigurationError);
  doc = system_to_json(ref::s1());
  doc["tol"] = -1;
  EXPECT_THROW(run_config_from_json(doc), ConfigurationError);
  doc = system_to_json(ref::s1());
  doc["cone"] = {{"a", 0.5}, {"gamma", 1.0}, {"b", 1.0}, {"c", 2}};
  EXPECT_THROW(run_config_from_json(doc), ConfigurationError);
  json mixed{{"system", system_to_json(ref::s1())}, {"lambda", 0.4}};
  EXPECT_THROW(run_config_from_json(mixed), ConfigurationError);
}

TEST(RunConfig, LoadsFromFile) {
  const std::string path = ::testing::TempDir() + "rifs_config_test.json";
  {
    std::ofstream out(path);
    out << system_to_json(ref::s2()).dump();
  }
  EXPECT_EQ(load_run_config(path).system.lambda, 0.5);
  EXPECT_THROW(load_run_config(path + ".missing"), ConfigurationError);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(load_run_config(path), ConfigurationError);
}
