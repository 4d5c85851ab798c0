#include "tpmhdg/assembly.hpp"

#include <sstream>
#include <stdexcept>

#include "tpmhdg/error.hpp"
#include "tpmhdg/parallel.hpp"
#include "tpmhdg/quadrature.hpp"

namespace tpmhdg {

std::string to_string(AssemblyMode mode) { return mode == AssemblyMode::monolithic ? "monolithic" : "condensed"; }

AssemblyMode parse_mode(const std::string& name) {
  if (name == "monolithic") return AssemblyMode::monolithic;
  if (name == "condensed") return AssemblyMode::condensed;
  throw std::invalid_argument("unknown assembly mode '" + name + "'");
}

std::string DofLayout::manifest() const {
  std::ostringstream out;
  out << "k=" << k << " n_local=" << n << " elements=" << num_elements << " facets=" << num_facets << "\n"
      << "element K: [qx qy y px py z] x " << n << " at " << element_block() << "*K\n"
      << "facet f: [yhat zhat] x " << (k + 1) << " at " << volume_size() << "+" << facet_block() << "*f\n"
      << "size=" << size() << " trace_size=" << trace_size() << "\n";
  return out.str();
}

Eigen::VectorXd tpm_path_integral(const ElementBasis& basis, const TransferNode& node, int seg_exactness) {
  const int n = basis.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
  if (node.l < 1e-14) return out;
  const QuadRule rule = segment_rule(seg_exactness);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double s = rule.nodes[q].x() * node.l;
    acc.noalias() += rule.weights[q] * node.l * basis.values(node.x + s * node.m);
  }
  out.head(n) = node.m.x() * acc;
  out.tail(n) = node.m.y() * acc;
  return out;
}

double tpm_path_integral(const ScalarField& f, const Vec2& x, const Vec2& m, double l, int seg_exactness) {
  if (l < 1e-14) return 0.0;
  const QuadRule rule = segment_rule(seg_exactness);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) acc += rule.weights[q] * l * f(x + rule.nodes[q].x() * l * m);
  return acc;
}

ElementBlocks element_blocks(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                             const StabilizationPair& tau, int k, int K) {
  const ElementBasis basis(mesh.element_vertices(K), k);
  const int n = basis.size();
  const int m = k + 1;
  const int ex = assembly_exactness(k);
  const double alpha = data.alpha();
  const int QX = 0, QY = n, Y = 2 * n, PX = 3 * n, PY = 4 * n, Z = 5 * n;

  ElementBlocks blk;
  blk.element = K;
  blk.facets = mesh.element_facets(K);
  blk.A = Eigen::MatrixXd::Zero(6 * n, 6 * n);
  blk.B = Eigen::MatrixXd::Zero(6 * n, 6 * m);
  blk.F = Eigen::VectorXd::Zero(6 * n);

  for (const auto& qp : map_to_triangle(triangle_rule(ex), basis.vertices())) {
    const Eigen::VectorXd phi = basis.values(qp.x);
    const Eigen::MatrixXd mass = qp.w * phi * phi.transpose();
    blk.A.block(QX, QX, n, n) += mass;
    blk.A.block(QY, QY, n, n) += mass;
    blk.A.block(PX, PX, n, n) += mass;
    blk.A.block(PY, PY, n, n) += mass;
    blk.A.block(Y, Z, n, n) -= alpha * mass;
    blk.A.block(Z, Y, n, n) += mass;
    blk.F.segment(Y, n) += qp.w * data.f(qp.x) * phi;
    blk.F.segment(Z, n) += qp.w * data.y_d(qp.x) * phi;
    if (k == 0) continue;  // constant test functions have no gradient terms
    const GradMatrix grad = basis.gradients(qp.x);
    const Eigen::VectorXd bgrad = grad * data.beta(qp.x);
    const Eigen::MatrixXd dx = qp.w * grad.col(0) * phi.transpose();
    const Eigen::MatrixXd dy = qp.w * grad.col(1) * phi.transpose();
    const Eigen::MatrixXd conv = qp.w * bgrad * phi.transpose();
    // -(y, div r)
    blk.A.block(QX, Y, n, n) -= dx;
    blk.A.block(QY, Y, n, n) -= dy;
    blk.A.block(PX, Z, n, n) -= dx;
    blk.A.block(PY, Z, n, n) -= dy;
    // -(q + beta y, grad w1), -(p - beta z, grad w2)
    blk.A.block(Y, QX, n, n) -= dx;
    blk.A.block(Y, QY, n, n) -= dy;
    blk.A.block(Y, Y, n, n) -= conv;
    blk.A.block(Z, PX, n, n) -= dx;
    blk.A.block(Z, PY, n, n) -= dy;
    blk.A.block(Z, Z, n, n) += conv;
  }

  const QuadRule frule = segment_rule(ex);
  const auto& verts = mesh.vertices();
  for (int i = 0; i < 3; ++i) {
    const int f = blk.facets[static_cast<std::size_t>(i)];
    const Facet& facet = mesh.facets()[f];
    const int side = facet.elem[0] == K ? 0 : 1;
    const Vec2 a = verts[facet.v[0]];
    const Vec2 b = verts[facet.v[1]];
    const Vec2 nrm = mesh.outward_normal(K, i);
    const FacetBasis fb(a, b, k);
    const double t1 = tau.tau1[f];
    const int YH = 2 * m * i, ZH = 2 * m * i + m;

    Eigen::MatrixXd& C = blk.C[static_cast<std::size_t>(i)];
    Eigen::MatrixXd& D = blk.D[static_cast<std::size_t>(i)];
    Eigen::VectorXd& G = blk.G[static_cast<std::size_t>(i)];
    C = Eigen::MatrixXd::Zero(2 * m, 6 * n);
    D = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    G = Eigen::VectorXd::Zero(2 * m);

    const auto pts = map_to_segment(frule, a, b);
    for (std::size_t q = 0; q < pts.size(); ++q) {
      const double w = pts[q].w;
      const Vec2& x = pts[q].x;
      const Eigen::VectorXd phi = basis.values(x);
      const Eigen::VectorXd mu = fb.values(x);
      const double bn = data.beta(x).dot(nrm);
      const double t2 = tau.tau2_at(f, side, static_cast<int>(q));
      const Eigen::MatrixXd pm = w * phi * mu.transpose();
      const Eigen::MatrixXd pp = w * phi * phi.transpose();
      // <yhat, r.n>, <zhat, r.n>
      blk.B.block(QX, YH, n, m) += nrm.x() * pm;
      blk.B.block(QY, YH, n, m) += nrm.y() * pm;
      blk.B.block(PX, ZH, n, m) += nrm.x() * pm;
      blk.B.block(PY, ZH, n, m) += nrm.y() * pm;
      // <q.n + tau1 (y - yhat) + beta.n yhat, w1>
      blk.A.block(Y, QX, n, n) += nrm.x() * pp;
      blk.A.block(Y, QY, n, n) += nrm.y() * pp;
      blk.A.block(Y, Y, n, n) += t1 * pp;
      blk.B.block(Y, YH, n, m) += (bn - t1) * pm;
      // <p.n + tau2 (z - zhat) - beta.n zhat, w2>
      blk.A.block(Z, PX, n, n) += nrm.x() * pp;
      blk.A.block(Z, PY, n, n) += nrm.y() * pp;
      blk.A.block(Z, Z, n, n) += t2 * pp;
      blk.B.block(Z, ZH, n, m) += (-t2 - bn) * pm;
      if (facet.is_boundary()) continue;
      const Eigen::MatrixXd mp = w * mu * phi.transpose();
      const Eigen::MatrixXd mm = w * mu * mu.transpose();
      C.block(0, QX, m, n) += nrm.x() * mp;
      C.block(0, QY, m, n) += nrm.y() * mp;
      C.block(0, Y, m, n) += t1 * mp;
      D.block(0, 0, m, m) += (bn - t1) * mm;
      C.block(m, PX, m, n) += nrm.x() * mp;
      C.block(m, PY, m, n) += nrm.y() * mp;
      C.block(m, Z, m, n) += t2 * mp;
      D.block(m, m, m, m) += (-t2 - bn) * mm;
    }

    if (!facet.is_boundary()) continue;
    const FacetTransfer* ft = map.find(f);
    if (!ft) {
      std::ostringstream msg;
      msg << "boundary facet " << f << " has no transfer data";
      throw std::logic_error(msg.str());
    }
    // <yhat, mu> - <int_0^l E(q).m ds, mu> = <g(phi(x)), mu>, likewise for zhat
    const int pex = assembly_exactness(k);
    for (const auto& node : ft->nodes) {
      const Eigen::VectorXd mu = fb.values(node.x);
      const Eigen::VectorXd path = tpm_path_integral(basis, node, pex);
      const Eigen::MatrixXd mm = node.weight * mu * mu.transpose();
      D.block(0, 0, m, m) += mm;
      D.block(m, m, m, m) += mm;
      const Eigen::MatrixXd cx = node.weight * mu * path.head(n).transpose();
      const Eigen::MatrixXd cy = node.weight * mu * path.tail(n).transpose();
      C.block(0, QX, m, n) -= cx;
      C.block(0, QY, m, n) -= cy;
      C.block(m, PX, m, n) -= cx;
      C.block(m, PY, m, n) -= cy;
      G.head(m) += node.weight * data.g(node.phi) * mu;
      G.tail(m) += node.weight * data.g_adj(node.phi) * mu;
    }
  }
  return blk;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_block(Triplets& t, int row, int col, const Eigen::MatrixXd& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0.0) t.emplace_back(row + static_cast<int>(i), col + static_cast<int>(j), M(i, j));
}

Eigen::SparseMatrix<double> build(int size, const Triplets& t) {
  Eigen::SparseMatrix<double> M(size, size);
  M.setFromTriplets(t.begin(), t.end());
  M.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  M.makeCompressed();
  return M;
}

std::vector<ElementBlocks> all_blocks(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                                      const StabilizationPair& tau, int k) {
  std::vector<ElementBlocks> blocks(static_cast<std::size_t>(mesh.num_elements()));
  parallel_for(mesh.num_elements(), [&](int K) { blocks[static_cast<std::size_t>(K)] = element_blocks(mesh, map, data, tau, k, K); });
  return blocks;
}

}  // namespace

LinearSystem assemble_monolithic(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                                 const StabilizationPair& tau, int k) {
  LinearSystem sys;
  sys.mode = AssemblyMode::monolithic;
  sys.layout = DofLayout(k, mesh.num_elements(), mesh.num_facets());
  sys.alpha = data.alpha();
  const DofLayout& L = sys.layout;
  sys.rhs = Eigen::VectorXd::Zero(L.size());
  const int m = k + 1;

  const auto blocks = all_blocks(mesh, map, data, tau, k);
  Triplets t;
  for (const auto& blk : blocks) {
    const int row = L.element_offset(blk.element);
    add_block(t, row, row, blk.A);
    sys.rhs.segment(row, blk.F.size()) += blk.F;
    for (int i = 0; i < 3; ++i) {
      const int fo = L.facet_offset(blk.facets[static_cast<std::size_t>(i)]);
      add_block(t, row, fo, blk.B.middleCols(2 * m * i, 2 * m));
      add_block(t, fo, row, blk.C[static_cast<std::size_t>(i)]);
      add_block(t, fo, fo, blk.D[static_cast<std::size_t>(i)]);
      sys.rhs.segment(fo, 2 * m) += blk.G[static_cast<std::size_t>(i)];
    }
  }
  sys.matrix = build(L.size(), t);
  return sys;
}

LinearSystem assemble_condensed(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                                const StabilizationPair& tau, int k) {
  LinearSystem sys;
  sys.mode = AssemblyMode::condensed;
  sys.layout = DofLayout(k, mesh.num_elements(), mesh.num_facets());
  sys.alpha = data.alpha();
  const DofLayout& L = sys.layout;
  const int m = k + 1;
  const int fb = L.facet_block();
  sys.rhs = Eigen::VectorXd::Zero(L.trace_size());
  sys.local.resize(static_cast<std::size_t>(mesh.num_elements()));

  struct Contribution {
    std::array<Eigen::MatrixXd, 3> S;  // facet i rows, all local trace columns
    std::array<Eigen::VectorXd, 3> r;
  };
  std::vector<Contribution> contrib(static_cast<std::size_t>(mesh.num_elements()));

  parallel_for(mesh.num_elements(), [&](int K) {
    const ElementBlocks blk = element_blocks(mesh, map, data, tau, k, K);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(blk.A);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double rc = std::min(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff());
    if (!(rc > 1e-13)) {
      std::ostringstream msg;
      msg << "local block of element " << K << " is singular (rcond " << rc << ")";
      throw SingularLocalBlock(msg.str(), K);
    }
    LocalSolver& ls = sys.local[static_cast<std::size_t>(K)];
    ls.facets = blk.facets;
    ls.AinvB = lu.solve(blk.B);
    ls.AinvF = lu.solve(blk.F);
    Contribution& c = contrib[static_cast<std::size_t>(K)];
    for (int i = 0; i < 3; ++i) {
      const auto si = static_cast<std::size_t>(i);
      c.S[si] = -blk.C[si] * ls.AinvB;
      c.S[si].middleCols(2 * m * i, 2 * m) += blk.D[si];
      c.r[si] = blk.G[si] - blk.C[si] * ls.AinvF;
    }
  });

  Triplets t;
  for (int K = 0; K < mesh.num_elements(); ++K) {
    const auto& c = contrib[static_cast<std::size_t>(K)];
    const auto& facets = sys.local[static_cast<std::size_t>(K)].facets;
    for (int i = 0; i < 3; ++i) {
      const int row = facets[static_cast<std::size_t>(i)] * fb;
      for (int j = 0; j < 3; ++j)
        add_block(t, row, facets[static_cast<std::size_t>(j)] * fb, c.S[static_cast<std::size_t>(i)].middleCols(2 * m * j, 2 * m));
      sys.rhs.segment(row, fb) += c.r[static_cast<std::size_t>(i)];
    }
  }
  sys.matrix = build(L.trace_size(), t);
  return sys;
}

}  // namespace tpmhdg
