#include "tpmhdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tpmhdg/error.hpp"

namespace tpmhdg {
namespace {

QuadRule gauss_legendre(int exactness) {
  const int n = exactness / 2 + 1;
  QuadRule rule;
  rule.kind = QuadKind::segment;
  rule.exactness = 2 * n - 1;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map from [-1, 1] to [0, 1], ascending order.
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = Vec2(0.5 * (x + 1.0), 0.0);
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
  return rule;
}

class TriangleBuilder {
 public:
  explicit TriangleBuilder(int exactness) {
    rule_.kind = QuadKind::triangle;
    rule_.exactness = exactness;
  }

  void mid(double w) { add(1.0 / 3.0, 1.0 / 3.0, w); }
  void points3(double a, double b, double w) {
    add(a, a, w);
    add(a, b, w);
    add(b, a, w);
  }
  void points3(double a, double w) { points3(a, 1.0 - 2.0 * a, w); }
  void points3b(double b, double w) { points3((1.0 - b) / 2.0, b, w); }
  void points3r(double a, double b, double c, double w) {
    add(a, b, w);
    add(c, a, w);
    add(b, c, w);
  }
  void points6(double a, double b, double c, double w) {
    add(a, b, w);
    add(b, a, w);
    add(a, c, w);
    add(c, a, w);
    add(b, c, w);
    add(c, b, w);
  }
  void points6(double a, double b, double w) { points6(a, b, 1.0 - a - b, w); }

  QuadRule take() { return std::move(rule_); }

 private:
  void add(double x, double y, double w) {
    rule_.nodes.emplace_back(x, y);
    rule_.weights.push_back(w);
  }
  QuadRule rule_;
};

// Symmetric rules on the reference triangle (Dunavant-type tables, weights summing to 1/2).
QuadRule triangle_table(int exactness) {
  switch (exactness) {
    case 0:
    case 1: {
      TriangleBuilder b(1);
      b.mid(0.5);
      return b.take();
    }
    case 2: {
      TriangleBuilder b(2);
      b.points3(1.0 / 6.0, 1.0 / 6.0);
      return b.take();
    }
    case 3:
    case 4: {
      TriangleBuilder b(4);
      b.points3(0.091576213509770743460, 0.054975871827660933819);
      b.points3(0.44594849091596488632, 0.11169079483900573285);
      return b.take();
    }
    case 5: {
      TriangleBuilder b(5);
      b.mid(0.1125);
      b.points3(0.10128650732345633880, 0.062969590272413576298);
      b.points3(0.47014206410511508977, 0.066197076394253090369);
      return b.take();
    }
    case 6: {
      TriangleBuilder b(6);
      b.points3(0.063089014491502228340, 0.025422453185103408460);
      b.points3(0.24928674517091042129, 0.058393137863189683013);
      b.points6(0.053145049844816947353, 0.31035245103378440542, 0.041425537809186787597);
      return b.take();
    }
    case 7: {
      TriangleBuilder b(7);
      b.points3r(0.062382265094402118174, 0.067517867073916085443, 1.0 - 0.062382265094402118174 - 0.067517867073916085443,
                 0.026517028157436251429);
      b.points3r(0.055225456656926611737, 0.32150249385198182267, 1.0 - 0.055225456656926611737 - 0.32150249385198182267,
                 0.043881408714446055037);
      b.points3r(0.034324302945097146470, 0.66094919618673565761, 0.30472650086816719592, 0.028775042784981585738);
      b.points3r(0.51584233435359177926, 0.27771616697639178257, 0.20644149867001643817, 0.067493187009802774463);
      return b.take();
    }
    case 8: {
      TriangleBuilder b(8);
      b.mid(0.0721578038388935841255455552445323);
      b.points3(0.170569307751760206622293501491464, 0.0516086852673591251408957751460645);
      b.points3(0.0505472283170309754584235505965989, 0.0162292488115990401554629641708902);
      b.points3(0.459292588292723156028815514494169, 0.0475458171336423123969480521942921);
      b.points6(0.008394777409957605337213834539296, 0.263112829634638113421785786284643,
                0.0136151570872174971324223450369544);
      return b.take();
    }
    case 9: {
      TriangleBuilder b(9);
      b.mid(0.0485678981413994169096209912536443);
      b.points3b(0.020634961602524744433, 0.0156673501135695352684274156436046);
      b.points3b(0.12582081701412672546, 0.0389137705023871396583696781497019);
      b.points3(0.188203535619032730240961280467335, 0.0398238694636051265164458871320226);
      b.points3(0.0447295133944527098651065899662763, 0.0127888378293490156308393992794999);
      b.points6(0.0368384120547362836348175987833851, 0.2219629891607656956751025276931919,
                0.0216417696886446886446886446886446);
      return b.take();
    }
    case 10: {
      TriangleBuilder b(10);
      b.mid(0.0454089951913767900476432975500142);
      b.points3b(0.028844733232685245264984935583748, 0.0183629788782333523585030359456832);
      b.points3(0.109481575485037054795458631340522, 0.0226605297177639673913028223692986);
      b.points6(0.141707219414879954756683250476361, 0.307939838764120950165155022930631,
                0.0363789584227100543021575883096803);
      b.points6(0.025003534762686386073988481007746, 0.246672560639902693917276465411176,
                0.0141636212655287424183685307910495);
      b.points6(0.0095408154002994575801528096228873, 0.0668032510122002657735402127620247,
                4.71083348186641172996373548344341E-03);
      return b.take();
    }
    case 11: {
      TriangleBuilder b(11);
      b.points6(0.0, 0.141129718717363295960826061941652, 3.68119189165027713212944752369032E-03);
      b.mid(0.0439886505811161193990465846607278);
      b.points3(0.0259891409282873952600324854988407, 4.37215577686801152475821439991262E-03);
      b.points3(0.0942875026479224956305697762754049, 0.0190407859969674687575121697178070);
      b.points3b(0.010726449965572372516734795387128, 9.42772402806564602923839129555767E-03);
      b.points3(0.207343382614511333452934024112966, 0.0360798487723697630620149942932315);
      b.points3b(0.122184388599015809877869236727746, 0.0346645693527679499208828254519072);
      b.points6(0.0448416775891304433090523914688007, 0.2772206675282791551488214673424523,
                0.0205281577146442833208261574536469);
      return b.take();
    }
    case 12: {
      TriangleBuilder b(12);
      b.points3b(2.35652204523900E-02, 1.28655332202275E-02);
      b.points3b(1.20551215411079E-01, 2.18462722690190E-02);
      b.points3(2.71210385012116E-01, 3.14291121089425E-02);
      b.points3(1.27576145541586E-01, 1.73980564653545E-02);
      b.points3(2.13173504532100E-02, 3.08313052577950E-03);
      b.points6(1.15343494534698E-01, 2.75713269685514E-01, 2.01857788831905E-02);
      b.points6(2.28383322222570E-02, 2.81325580989940E-01, 1.11783866011515E-02);
      b.points6(2.57340505483300E-02, 1.16251915907597E-01, 8.65811555432950E-03);
      return b.take();
    }
    default:
      break;
  }
  throw UnsupportedOrder("triangle quadrature exactness " + std::to_string(exactness) + " not supported (max 12)");
}

}  // namespace

QuadRule quadrature(QuadKind kind, int exactness) {
  if (exactness < 0) throw UnsupportedOrder("negative quadrature exactness");
  if (kind == QuadKind::segment) {
    if (exactness > 41) throw UnsupportedOrder("segment quadrature exactness " + std::to_string(exactness) + " not supported (max 41)");
    return gauss_legendre(exactness);
  }
  return triangle_table(exactness);
}

std::vector<QuadPoint> map_to_triangle(const QuadRule& rule, const std::array<Vec2, 3>& v) {
  const Vec2 e1 = v[1] - v[0];
  const Vec2 e2 = v[2] - v[0];
  const double jac = std::abs(cross2(e1, e2));
  std::vector<QuadPoint> out;
  out.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
    out.push_back({v[0] + rule.nodes[i].x() * e1 + rule.nodes[i].y() * e2, rule.weights[i] * jac});
  return out;
}

std::vector<QuadPoint> map_to_segment(const QuadRule& rule, const Vec2& a, const Vec2& b) {
  const double len = (b - a).norm();
  std::vector<QuadPoint> out;
  out.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = rule.nodes[i].x();
    out.push_back({(1.0 - s) * a + s * b, rule.weights[i] * len});
  }
  return out;
}

}  // namespace tpmhdg
