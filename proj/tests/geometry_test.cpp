#include <gtest/gtest.h>

#include <cmath>

#include "hhcub/errors.hpp"
#include "hhcub/geometry.hpp"
#include "test_support.hpp"

namespace hhcub {
namespace {

using testing::Rng;

Simplex triangle(double ax, double ay, double bx, double by, double cx, double cy) {
  return Simplex({Point{ax, ay}, Point{bx, by}, Point{cx, cy}});
}

TEST(Simplex, Barycenters) {
  const Point unit = Simplex::unit(2).barycenter();
  EXPECT_NEAR(unit[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(unit[1], 1.0 / 3.0, 1e-15);

  EXPECT_DOUBLE_EQ(Simplex({Point{0.0}, Point{1.0}}).barycenter()[0], 0.5);

  const Point p = triangle(1, 1, 3, 1, 1, 4).barycenter();
  EXPECT_NEAR(p[0], 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(p[1], 2.0, 1e-15);
}

TEST(Simplex, Volumes) {
  EXPECT_NEAR(Simplex::unit(3).volume(), 1.0 / 6.0, 1e-16);
  EXPECT_NEAR(Simplex::unit(2).volume(), 0.5, 1e-16);
  EXPECT_NEAR(triangle(0, 0, 2, 0, 0, 2).volume(), 2.0, 1e-15);
  EXPECT_NEAR(Simplex::unit(5).volume(), 1.0 / 120.0, 1e-17);
}

TEST(Simplex, RejectsDegenerateAndMalformed) {
  EXPECT_THROW(triangle(0, 0, 1, 1, 2, 2), DegenerateSimplex);
  EXPECT_THROW(Simplex({Point{0.0, 0.0}, Point{1.0, 0.0}}), DimensionMismatch);
  EXPECT_THROW(Simplex({Point{0.0, 0.0}, Point{1.0}, Point{0.0, 1.0}}), DimensionMismatch);
  EXPECT_THROW(Simplex({Point{0.0}, Point{0.0}}), DegenerateSimplex);
  EXPECT_THROW(Simplex({Point{0.0}, Point{std::nan("")}}), std::exception);
}

TEST(Simplex, DegeneracyThresholdIsScaleAware) {
  // Tiny but well-shaped triangles are fine; thin slivers are not.
  EXPECT_NO_THROW(triangle(0, 0, 1e-6, 0, 0, 1e-6));
  EXPECT_THROW(triangle(0, 0, 1, 0, 0.5, 1e-14), DegenerateSimplex);
}

TEST(AffineChart, UnitSimplexIsIdentity) {
  const AffineChart chart = Simplex::unit(3).chart();
  EXPECT_DOUBLE_EQ(chart.jacobian(), 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(chart.matrix()(i, j), i == j ? 1.0 : 0.0);
}

TEST(AffineChart, ScalingExample) {
  const AffineChart chart = triangle(0, 0, 2, 0, 0, 2).chart();
  const Point x = chart.to_physical(Point{0.5, 0.5}.coords());
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
  EXPECT_NEAR(chart.jacobian(), 4.0, 1e-15);
}

TEST(AffineChart, BarycenterMapsToReferenceBarycenter) {
  Rng rng(11);
  for (std::size_t n = 1; n <= 5; ++n) {
    const Simplex s = testing::random_simplex(n, rng);
    const Point u = s.chart().to_reference(s.barycenter().coords());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(u[i], 1.0 / static_cast<double>(n + 1), 1e-12);
  }
}

TEST(AffineChart, JacobianIsFactorialTimesVolume) {
  Rng rng(12);
  for (std::size_t n = 1; n <= 5; ++n) {
    const Simplex s = testing::random_simplex(n, rng);
    EXPECT_NEAR(s.jacobian(), static_cast<double>(factorial(static_cast<unsigned>(n))) * s.volume(),
                1e-12 * s.jacobian());
    const AffineChart c = s.chart();
    const Point o = c.to_physical(Point(n).coords());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(o[i], s.vertex(0)[i], 1e-14);
    for (std::size_t k = 1; k <= n; ++k) {
      Point e(n);
      e[k - 1] = 1.0;
      const Point x = c.to_physical(e.coords());
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], s.vertex(k)[i], 1e-14);
    }
  }
}

TEST(AffineChart, RoundTripProperty) {
  Rng rng(13);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const Simplex s = testing::random_simplex(n, rng);
      const AffineChart c = s.chart();
      for (int k = 0; k < 100; ++k) {
        const Point x = s.point_at(testing::random_barycentric(n, rng));
        const Point back = c.to_physical(c.to_reference(x.coords()).coords());
        for (std::size_t i = 0; i < n; ++i) EXPECT_LE(std::abs(back[i] - x[i]), 1e-12 * (1.0 + std::abs(x[i])));
      }
    }
  }
}

TEST(Simplex, AffineImageOfBarycenterIsVertexMean) {
  // A(barycenter) equals the vertex mean of A for affine A.
  Rng rng(14);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const Simplex s = testing::random_simplex(n, rng);
      const Point a = testing::random_point(n, rng);
      const double b = testing::uniform(rng);
      const auto affine = [&](const Point& x) { return dot(a.coords(), x.coords()) + b; };
      double mean = 0.0;
      for (const Point& p : s.vertices()) mean += affine(p);
      mean /= static_cast<double>(n + 1);
      EXPECT_NEAR(affine(s.barycenter()), mean, 1e-12);
    }
  }
}

TEST(Bisect, Segment) {
  const auto [left, right] = Simplex({Point{0.0}, Point{1.0}}).bisect();
  EXPECT_EQ(left.vertex(0)[0], 0.0);
  EXPECT_EQ(left.vertex(1)[0], 0.5);
  EXPECT_EQ(right.vertex(0)[0], 0.5);
  EXPECT_EQ(right.vertex(1)[0], 1.0);
}

TEST(Bisect, UnitTriangleSplitsHypotenuse) {
  const Simplex s = Simplex::unit(2);
  EXPECT_EQ(s.longest_edge_indices(), (std::pair<std::size_t, std::size_t>{1, 2}));
  const auto [a, b] = s.bisect();
  EXPECT_NEAR(a.volume(), 0.25, 1e-16);
  EXPECT_NEAR(b.volume(), 0.25, 1e-16);
  const Point mid{0.5, 0.5};
  EXPECT_EQ(a.vertex(2), mid);
  EXPECT_EQ(b.vertex(1), mid);
}

TEST(Bisect, TieBreakIsLexicographic) {
  // |p0 p2| = |p1 p2| = sqrt(5) > |p0 p1| = 2.
  EXPECT_EQ(triangle(0, 0, 2, 0, 1, 2).longest_edge_indices(), (std::pair<std::size_t, std::size_t>{0, 2}));
  // All six edges of the regular-corner tetrahedron {e1, e2, e3, (1,1,1)} tie.
  const Simplex t({Point{1.0, 0.0, 0.0}, Point{0.0, 1.0, 0.0}, Point{0.0, 0.0, 1.0}, Point{1.0, 1.0, 1.0}});
  EXPECT_EQ(t.longest_edge_indices(), (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Bisect, VolumeConservationProperty) {
  Rng rng(15);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const Simplex s = testing::random_simplex(n, rng);
      const auto [a, b] = s.bisect();
      EXPECT_LE(testing::relative_error(a.volume() + b.volume(), s.volume()), 1e-12);
    }
  }
}

TEST(Bisect, RepeatedBisectionStaysNonDegenerate) {
  Rng rng(16);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Simplex> level{testing::random_simplex(n, rng)};
      const double volume = level.front().volume();
      for (int depth = 0; depth < 20; ++depth) {
        // Follow both children for the first few levels, then one branch.
        std::vector<Simplex> next;
        for (const Simplex& s : level) {
          auto [a, b] = s.bisect();
          next.push_back(a);
          if (depth < 6) next.push_back(b);
        }
        level = std::move(next);
      }
      for (const Simplex& s : level) EXPECT_NEAR(s.volume(), volume / std::pow(2.0, 20), 1e-12 * volume);
    }
  }
}

TEST(SimplexIo, ParseAndFormat) {
  const Simplex s = parse_simplex("# triangle\n0 0\n1 0  # right\n\n0 1\n");
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.vertex(1), (Point{1.0, 0.0}));
  const Simplex t = parse_simplex(format_simplex(triangle(0.1, 0.2, 3.5, -1, 1e-3, 7)));
  EXPECT_EQ(t.vertex(0), (Point{0.1, 0.2}));
  EXPECT_EQ(t.vertex(2), (Point{1e-3, 7.0}));
}

TEST(SimplexIo, Errors) {
  try {
    parse_simplex("0 0\n1 zero\n0 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_simplex("0 0\n1 0 0\n0 1\n"), ParseError);
  EXPECT_THROW(parse_simplex("0 0\n1 0\n"), ParseError);
  EXPECT_THROW(parse_simplex(""), std::exception);
  EXPECT_THROW(load_simplex("/nonexistent/path.spx"), ParseError);
}

TEST(Factorial, Range) {
  EXPECT_EQ(factorial(0), 1u);
  EXPECT_EQ(factorial(5), 120u);
  EXPECT_EQ(factorial(20), 2432902008176640000ull);
  EXPECT_THROW(factorial(21), UnsupportedDimension);
}

}  // namespace
}  // namespace hhcub
