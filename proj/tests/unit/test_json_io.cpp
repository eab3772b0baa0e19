#include <gtest/gtest.h>

#include "conecert/catalog.hpp"
#include "conecert/checkers.hpp"
#include "conecert/error.hpp"
#include "conecert/json_io.hpp"

using namespace conecert;
using nlohmann::json;

TEST(JsonIo, PointRoundTrip) {
  for (const Point& p : {Point::vector({1.5, -2, 0}), Point::matrix(2, {1, 0.25, 0.25, 3})}) {
    EXPECT_EQ(point_from_json(to_json(p)), p);
  }
  EXPECT_EQ(to_json(Point::matrix(2, {1, 2, 2, 5})), json::parse("[[1.0,2.0],[2.0,5.0]]"));
}

TEST(JsonIo, ConeRoundTrip) {
  for (const ConeSpec& c :
       {ConeSpec::nonneg_orthant(3), ConeSpec::psd(2), ConeSpec::grid_lp(8, 3.0, 0.125),
        ConeSpec::product({ConeSpec::positive_orthant(1), ConeSpec::full_space(2)})}) {
    EXPECT_EQ(cone_from_json(to_json(c)), c);
  }
}

TEST(JsonIo, ReportShape) {
  CheckConfig cfg;
  cfg.trials = 2000;
  auto r = refute(lookup("geomean2"), PropertyLabel::StrongSubadd, cfg);
  json j = to_json(r);
  for (const char* key : {"property", "target", "verdict", "trials", "skipped", "worst_margin",
                          "witness", "config"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["verdict"], "VIOLATION_FOUND");
  // Witness points replay from JSON with the same margin.
  auto f = instantiate(lookup("geomean2"));
  Witness w = *r.witness;
  for (auto& np : w.points) np.value = point_from_json(j["witness"]["points"][np.name]);
  EXPECT_EQ(witness_margin(f, w), j["witness"]["margin"].get<double>());
}

TEST(JsonIo, LaplaceAtoms) {
  auto cone = ConeSpec::nonneg_orthant(1);
  auto cert = laplace_from_json(cone, json::parse("[[0.5, [1.0]], [0.5, [3.0]]]"));
  ASSERT_EQ(cert.atoms().size(), 2u);
  EXPECT_EQ(to_json(cert)["atoms"], json::parse("[[0.5, [1.0]], [0.5, [3.0]]]"));
  EXPECT_THROW(laplace_from_json(cone, json::parse("[[-1, [1.0]]]")), CertificateError);
}

TEST(JsonIo, CatalogListing) {
  json j = catalog_listing(lookup("lse"));
  EXPECT_EQ(j["id"], "lse");
  EXPECT_EQ(j["status"]["STRONG_SUBADD"], "paper-refuted-candidate");
  EXPECT_EQ(j["status"]["SUBMODULAR"], "paper-asserted");
}
