#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>

#include "lz/errors.hpp"

namespace lz::ode {

template <std::size_t N>
using State = std::array<double, N>;

// Adaptive step-size control for the embedded 8(5,3) pair.  max_step = 0
// means "no limit beyond the span being integrated".
struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;
  std::size_t max_steps = 2'000'000;
};

// Dormand-Prince 8(5,3) coefficients (Hairer, Norsett & Wanner, dop853):
// a 12-stage 8th-order step, embedded 5th- and 3rd-order error estimates,
// and three extra stages for a 7th-order dense-output interpolant.
namespace dp853 {

inline constexpr double c2 = 0.526001519587677318785587544488e-01;
inline constexpr double c3 = 0.789002279381515978178381316732e-01;
inline constexpr double c4 = 0.118350341907227396726757197510e+00;
inline constexpr double c5 = 0.281649658092772603273242802490e+00;
inline constexpr double c6 = 0.333333333333333333333333333333e+00;
inline constexpr double c7 = 0.25e+00;
inline constexpr double c8 = 0.307692307692307692307692307692e+00;
inline constexpr double c9 = 0.651282051282051282051282051282e+00;
inline constexpr double c10 = 0.6e+00;
inline constexpr double c11 = 0.857142857142857142857142857142e+00;
inline constexpr double c14 = 0.1e+00;
inline constexpr double c15 = 0.2e+00;
inline constexpr double c16 = 0.777777777777777777777777777778e+00;

inline constexpr double a21 = 5.26001519587677318785587544488e-2;
inline constexpr double a31 = 1.97250569845378994544595329183e-2;
inline constexpr double a32 = 5.91751709536136983633785987549e-2;
inline constexpr double a41 = 2.95875854768068491816892993775e-2;
inline constexpr double a43 = 8.87627564304205475450678981324e-2;
inline constexpr double a51 = 2.41365134159266685502369798665e-1;
inline constexpr double a53 = -8.84549479328286085344864962717e-1;
inline constexpr double a54 = 9.24834003261792003115737966543e-1;
inline constexpr double a61 = 3.7037037037037037037037037037e-2;
inline constexpr double a64 = 1.70828608729473871279604482173e-1;
inline constexpr double a65 = 1.25467687566822425016691814123e-1;
inline constexpr double a71 = 3.7109375e-2;
inline constexpr double a74 = 1.70252211019544039314978060272e-1;
inline constexpr double a75 = 6.02165389804559606850219397283e-2;
inline constexpr double a76 = -1.7578125e-2;
inline constexpr double a81 = 3.70920001185047927108779319836e-2;
inline constexpr double a84 = 1.70383925712239993810214054705e-1;
inline constexpr double a85 = 1.07262030446373284651809199168e-1;
inline constexpr double a86 = -1.53194377486244017527936158236e-2;
inline constexpr double a87 = 8.27378916381402288758473766002e-3;
inline constexpr double a91 = 6.24110958716075717114429577812e-1;
inline constexpr double a94 = -3.36089262944694129406857109825e0;
inline constexpr double a95 = -8.68219346841726006818189891453e-1;
inline constexpr double a96 = 2.75920996994467083049415600797e1;
inline constexpr double a97 = 2.01540675504778934086186788979e1;
inline constexpr double a98 = -4.34898841810699588477366255144e1;
inline constexpr double a101 = 4.77662536438264365890433908527e-1;
inline constexpr double a104 = -2.48811461997166764192642586468e0;
inline constexpr double a105 = -5.90290826836842996371446475743e-1;
inline constexpr double a106 = 2.12300514481811942347288949897e1;
inline constexpr double a107 = 1.52792336328824235832596922938e1;
inline constexpr double a108 = -3.32882109689848629194453265587e1;
inline constexpr double a109 = -2.03312017085086261358222928593e-2;
inline constexpr double a111 = -9.3714243008598732571704021658e-1;
inline constexpr double a114 = 5.18637242884406370830023853209e0;
inline constexpr double a115 = 1.09143734899672957818500254654e0;
inline constexpr double a116 = -8.14978701074692612513997267357e0;
inline constexpr double a117 = -1.85200656599969598641566180701e1;
inline constexpr double a118 = 2.27394870993505042818970056734e1;
inline constexpr double a119 = 2.49360555267965238987089396762e0;
inline constexpr double a1110 = -3.0467644718982195003823669022e0;
inline constexpr double a121 = 2.27331014751653820792359768449e0;
inline constexpr double a124 = -1.05344954667372501984066689879e1;
inline constexpr double a125 = -2.00087205822486249909675718444e0;
inline constexpr double a126 = -1.79589318631187989172765950534e1;
inline constexpr double a127 = 2.79488845294199600508499808837e1;
inline constexpr double a128 = -2.85899827713502369474065508674e0;
inline constexpr double a129 = -8.87285693353062954433549289258e0;
inline constexpr double a1210 = 1.23605671757943030647266201528e1;
inline constexpr double a1211 = 6.43392746015763530355970484046e-1;

// extra stages feeding the dense-output interpolant
inline constexpr double a141 = 5.61675022830479523392909219681e-2;
inline constexpr double a147 = 2.53500210216624811088794765333e-1;
inline constexpr double a148 = -2.46239037470802489917441475441e-1;
inline constexpr double a149 = -1.24191423263816360469010140626e-1;
inline constexpr double a1410 = 1.5329179827876569731206322685e-1;
inline constexpr double a1411 = 8.20105229563468988491666602057e-3;
inline constexpr double a1412 = 7.56789766054569976138603589584e-3;
inline constexpr double a1413 = -8.298e-3;
inline constexpr double a151 = 3.18346481635021405060768473261e-2;
inline constexpr double a156 = 2.83009096723667755288322961402e-2;
inline constexpr double a157 = 5.35419883074385676223797384372e-2;
inline constexpr double a158 = -5.49237485713909884646569340306e-2;
inline constexpr double a1511 = -1.08347328697249322858509316994e-4;
inline constexpr double a1512 = 3.82571090835658412954920192323e-4;
inline constexpr double a1513 = -3.40465008687404560802977114492e-4;
inline constexpr double a1514 = 1.41312443674632500278074618366e-1;
inline constexpr double a161 = -4.28896301583791923408573538692e-1;
inline constexpr double a166 = -4.69762141536116384314449447206e0;
inline constexpr double a167 = 7.68342119606259904184240953878e0;
inline constexpr double a168 = 4.06898981839711007970213554331e0;
inline constexpr double a169 = 3.56727187455281109270669543021e-1;
inline constexpr double a1613 = -1.39902416515901462129418009734e-3;
inline constexpr double a1614 = 2.9475147891527723389556272149e0;
inline constexpr double a1615 = -9.15095847217987001081870187138e0;

inline constexpr double b1 = 5.42937341165687622380535766363e-2;
inline constexpr double b6 = 4.45031289275240888144113950566e0;
inline constexpr double b7 = 1.89151789931450038304281599044e0;
inline constexpr double b8 = -5.8012039600105847814672114227e0;
inline constexpr double b9 = 3.1116436695781989440891606237e-1;
inline constexpr double b10 = -1.52160949662516078556178806805e-1;
inline constexpr double b11 = 2.01365400804030348374776537501e-1;
inline constexpr double b12 = 4.47106157277725905176885569043e-2;

// 3rd-order error estimate weights
inline constexpr double bhh1 = 0.244094488188976377952755905512e+00;
inline constexpr double bhh2 = 0.733846688281611857341361741547e+00;
inline constexpr double bhh3 = 0.220588235294117647058823529412e-01;

// 5th-order error estimate weights
inline constexpr double er1 = 0.1312004499419488073250102996e-01;
inline constexpr double er6 = -0.1225156446376204440720569753e+01;
inline constexpr double er7 = -0.4957589496572501915214079952e+00;
inline constexpr double er8 = 0.1664377182454986536961530415e+01;
inline constexpr double er9 = -0.3503288487499736816886487290e+00;
inline constexpr double er10 = 0.3341791187130174790297318841e+00;
inline constexpr double er11 = 0.8192320648511571246570742613e-01;
inline constexpr double er12 = -0.2235530786388629525884427845e-01;

// dense-output interpolation coefficients
inline constexpr double d41 = -0.84289382761090128651353491142e+01;
inline constexpr double d46 = 0.56671495351937776962531783590e+00;
inline constexpr double d47 = -0.30689499459498916912797304727e+01;
inline constexpr double d48 = 0.23846676565120698287728149680e+01;
inline constexpr double d49 = 0.21170345824450282767155149946e+01;
inline constexpr double d410 = -0.87139158377797299206789907490e+00;
inline constexpr double d411 = 0.22404374302607882758541771650e+01;
inline constexpr double d412 = 0.63157877876946881815570249290e+00;
inline constexpr double d413 = -0.88990336451333310820698117400e-01;
inline constexpr double d414 = 0.18148505520854727256656404962e+02;
inline constexpr double d415 = -0.91946323924783554000451984436e+01;
inline constexpr double d416 = -0.44360363875948939664310572000e+01;
inline constexpr double d51 = 0.10427508642579134603413151009e+02;
inline constexpr double d56 = 0.24228349177525818288430175319e+03;
inline constexpr double d57 = 0.16520045171727028198505394887e+03;
inline constexpr double d58 = -0.37454675472269020279518312152e+03;
inline constexpr double d59 = -0.22113666853125306036270938578e+02;
inline constexpr double d510 = 0.77334326684722638389603898808e+01;
inline constexpr double d511 = -0.30674084731089398182061213626e+02;
inline constexpr double d512 = -0.93321305264302278729567221706e+01;
inline constexpr double d513 = 0.15697238121770843886131091075e+02;
inline constexpr double d514 = -0.31139403219565177677282850411e+02;
inline constexpr double d515 = -0.93529243588444783865713862664e+01;
inline constexpr double d516 = 0.35816841486394083752465898540e+02;
inline constexpr double d61 = 0.19985053242002433820987653617e+02;
inline constexpr double d66 = -0.38703730874935176555105901742e+03;
inline constexpr double d67 = -0.18917813819516756882830838328e+03;
inline constexpr double d68 = 0.52780815920542364900561016686e+03;
inline constexpr double d69 = -0.11573902539959630126141871134e+02;
inline constexpr double d610 = 0.68812326946963000169666922661e+01;
inline constexpr double d611 = -0.10006050966910838403183860980e+01;
inline constexpr double d612 = 0.77771377980534432092869265740e+00;
inline constexpr double d613 = -0.27782057523535084065932004339e+01;
inline constexpr double d614 = -0.60196695231264120758267380846e+02;
inline constexpr double d615 = 0.84320405506677161018159903784e+02;
inline constexpr double d616 = 0.11992291136182789328035130030e+02;
inline constexpr double d71 = -0.25693933462703749003312586129e+02;
inline constexpr double d76 = -0.15418974869023643374053993627e+03;
inline constexpr double d77 = -0.23152937917604549567536039109e+03;
inline constexpr double d78 = 0.35763911791061412378285349910e+03;
inline constexpr double d79 = 0.93405324183624310003907691704e+02;
inline constexpr double d710 = -0.37458323136451633156875139351e+02;
inline constexpr double d711 = 0.10409964950896230045147246184e+03;
inline constexpr double d712 = 0.29840293426660503123344363579e+02;
inline constexpr double d713 = -0.43533456590011143754432175058e+02;
inline constexpr double d714 = 0.96324553959188282948394950600e+02;
inline constexpr double d715 = -0.39177261675615439165231486172e+02;
inline constexpr double d716 = -0.14972683625798562581422125276e+03;

// step-size controller
inline constexpr double ctrl_alpha = 0.125;  // 1/8, the inverse method order
inline constexpr double ctrl_safe = 0.9;
inline constexpr double ctrl_min_scale = 0.333;
inline constexpr double ctrl_max_scale = 6.0;

}  // namespace dp853

namespace detail {

// First-step heuristic: a conservative size from the scaled norms of y and
// y', refined by an explicit Euler probe of the second derivative.
template <std::size_t N, class Rhs>
double initial_step(Rhs& rhs, double t0, double dir, const State<N>& y,
                    const State<N>& f0, double rel_tol, double abs_tol,
                    double hmax) {
  double dnf = 0.0;
  double dny = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sk = abs_tol + rel_tol * std::abs(y[i]);
    dnf += (f0[i] / sk) * (f0[i] / sk);
    dny += (y[i] / sk) * (y[i] / sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
  h = std::min(h, hmax);

  State<N> y1{};
  State<N> f1{};
  for (std::size_t i = 0; i < N; ++i) {
    y1[i] = y[i] + dir * h * f0[i];
  }
  rhs(t0 + dir * h, y1, f1);

  double der2 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sk = abs_tol + rel_tol * std::abs(y[i]);
    der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
  }
  der2 = std::sqrt(der2) / h;

  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                     : std::pow(0.01 / der12, 1.0 / 8.0);
  return std::min({100.0 * h, h1, hmax});
}

}  // namespace detail

// Integrates y' = rhs(t, y) from t0 to t1 (either direction) and reports the
// state at each requested sample time through sink(index, t_sample, y_sample).
//
// `samples` must be strictly monotone in the direction of integration and lie
// within [t0, t1] up to round-off.  Sample states between accepted steps come
// from the method's 7th-order interpolant, so output accuracy follows the
// integration tolerances, not the output grid spacing.  Returns the state at
// t1.  Throws IntegrationError on step-size underflow or step-budget
// exhaustion, std::invalid_argument on malformed input.
template <std::size_t N, class Rhs, class Sink>
State<N> integrate(Rhs&& rhs, double t0, double t1, State<N> y,
                   const StepControl& ctrl, std::span<const double> samples,
                   Sink&& sink) {
  namespace tb = dp853;

  if (!(std::isfinite(t0) && std::isfinite(t1))) {
    throw std::invalid_argument("integrate: endpoints must be finite");
  }
  if (!(ctrl.rel_tol > 0.0) || !(ctrl.abs_tol > 0.0)) {
    throw std::invalid_argument("integrate: tolerances must be positive");
  }
  if (ctrl.max_step < 0.0) {
    throw std::invalid_argument("integrate: max_step must be >= 0");
  }

  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!((samples[i] - samples[i - 1]) * dir > 0.0)) {
      throw std::invalid_argument(
          "integrate: sample times must be strictly monotone toward t1");
    }
  }

  std::size_t next = 0;
  while (next < samples.size() && (samples[next] - t0) * dir <= 0.0) {
    sink(next, samples[next], y);
    ++next;
  }

  const double span = std::abs(t1 - t0);
  if (span == 0.0) {
    while (next < samples.size()) {
      sink(next, samples[next], y);
      ++next;
    }
    return y;
  }

  const double hmax = (ctrl.max_step > 0.0) ? std::min(ctrl.max_step, span) : span;
  constexpr double mach_eps = std::numeric_limits<double>::epsilon();

  State<N> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, k8{}, k9{}, k10{}, k11{},
      k12{}, kw{}, knew{}, ynew{}, ytmp{};

  rhs(t0, y, k1);
  double t = t0;
  double h =
      detail::initial_step<N>(rhs, t0, dir, y, k1, ctrl.rel_tol, ctrl.abs_tol, hmax);
  bool was_rejected = false;
  std::size_t steps = 0;

  while ((t1 - t) * dir > 0.0) {
    if (++steps > ctrl.max_steps) {
      throw IntegrationError(
          "integrate: step budget exhausted before reaching the end of the span",
          t);
    }
    h = std::min(h, hmax);
    if (h < 16.0 * mach_eps * std::max(std::abs(t), span)) {
      throw IntegrationError(
          "integrate: step size underflow (requested accuracy unattainable)", t);
    }

    bool last = false;
    double h_use = h;
    if ((t + dir * h - t1) * dir >= 0.0) {
      h_use = std::abs(t1 - t);
      last = true;
    }
    const double hd = dir * h_use;

    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a21 * k1[i]);
    }
    rhs(t + tb::c2 * hd, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a31 * k1[i] + tb::a32 * k2[i]);
    }
    rhs(t + tb::c3 * hd, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a41 * k1[i] + tb::a43 * k3[i]);
    }
    rhs(t + tb::c4 * hd, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a51 * k1[i] + tb::a53 * k3[i] + tb::a54 * k4[i]);
    }
    rhs(t + tb::c5 * hd, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a61 * k1[i] + tb::a64 * k4[i] + tb::a65 * k5[i]);
    }
    rhs(t + tb::c6 * hd, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a71 * k1[i] + tb::a74 * k4[i] + tb::a75 * k5[i] +
                             tb::a76 * k6[i]);
    }
    rhs(t + tb::c7 * hd, ytmp, k7);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a81 * k1[i] + tb::a84 * k4[i] + tb::a85 * k5[i] +
                             tb::a86 * k6[i] + tb::a87 * k7[i]);
    }
    rhs(t + tb::c8 * hd, ytmp, k8);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a91 * k1[i] + tb::a94 * k4[i] + tb::a95 * k5[i] +
                             tb::a96 * k6[i] + tb::a97 * k7[i] + tb::a98 * k8[i]);
    }
    rhs(t + tb::c9 * hd, ytmp, k9);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a101 * k1[i] + tb::a104 * k4[i] +
                             tb::a105 * k5[i] + tb::a106 * k6[i] +
                             tb::a107 * k7[i] + tb::a108 * k8[i] +
                             tb::a109 * k9[i]);
    }
    rhs(t + tb::c10 * hd, ytmp, k10);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a111 * k1[i] + tb::a114 * k4[i] +
                             tb::a115 * k5[i] + tb::a116 * k6[i] +
                             tb::a117 * k7[i] + tb::a118 * k8[i] +
                             tb::a119 * k9[i] + tb::a1110 * k10[i]);
    }
    rhs(t + tb::c11 * hd, ytmp, k11);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + hd * (tb::a121 * k1[i] + tb::a124 * k4[i] +
                             tb::a125 * k5[i] + tb::a126 * k6[i] +
                             tb::a127 * k7[i] + tb::a128 * k8[i] +
                             tb::a129 * k9[i] + tb::a1210 * k10[i] +
                             tb::a1211 * k11[i]);
    }
    rhs(t + hd, ytmp, k12);

    for (std::size_t i = 0; i < N; ++i) {
      kw[i] = tb::b1 * k1[i] + tb::b6 * k6[i] + tb::b7 * k7[i] + tb::b8 * k8[i] +
              tb::b9 * k9[i] + tb::b10 * k10[i] + tb::b11 * k11[i] +
              tb::b12 * k12[i];
      ynew[i] = y[i] + hd * kw[i];
    }

    // embedded error estimates of orders 5 and 3, combined Hairer-style so
    // the 3rd-order term damps the estimate instead of dominating it
    double err3 = 0.0;
    double err5 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sci =
          ctrl.abs_tol +
          ctrl.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double e3 =
          kw[i] - tb::bhh1 * k1[i] - tb::bhh2 * k9[i] - tb::bhh3 * k12[i];
      const double e5 = tb::er1 * k1[i] + tb::er6 * k6[i] + tb::er7 * k7[i] +
                        tb::er8 * k8[i] + tb::er9 * k9[i] + tb::er10 * k10[i] +
                        tb::er11 * k11[i] + tb::er12 * k12[i];
      err3 += (e3 / sci) * (e3 / sci);
      err5 += (e5 / sci) * (e5 / sci);
    }
    double deno = err5 + 0.01 * err3;
    if (deno <= 0.0) {
      deno = 1.0;
    }
    const double err =
        h_use * err5 * std::sqrt(1.0 / (static_cast<double>(N) * deno));

    if (!(err < 1.0)) {  // rejection; also catches a non-finite estimate
      const double fac =
          std::isfinite(err)
              ? std::max(tb::ctrl_safe * std::pow(err, -tb::ctrl_alpha),
                         tb::ctrl_min_scale)
              : tb::ctrl_min_scale;
      h = h_use * fac;
      was_rejected = true;
      continue;
    }

    const double t_new = last ? t1 : t + hd;
    rhs(t_new, ynew, knew);

    if (next < samples.size() && (samples[next] - t_new) * dir <= 0.0) {
      // build the dense-output polynomial for this step (three extra stages),
      // then emit every sample it covers
      std::array<State<N>, 8> r{};
      for (std::size_t i = 0; i < N; ++i) {
        r[0][i] = y[i];
        r[1][i] = ynew[i] - y[i];
        r[2][i] = hd * k1[i] - r[1][i];
        r[3][i] = r[1][i] - hd * knew[i] - r[2][i];
        r[4][i] = tb::d41 * k1[i] + tb::d46 * k6[i] + tb::d47 * k7[i] +
                  tb::d48 * k8[i] + tb::d49 * k9[i] + tb::d410 * k10[i] +
                  tb::d411 * k11[i] + tb::d412 * k12[i];
        r[5][i] = tb::d51 * k1[i] + tb::d56 * k6[i] + tb::d57 * k7[i] +
                  tb::d58 * k8[i] + tb::d59 * k9[i] + tb::d510 * k10[i] +
                  tb::d511 * k11[i] + tb::d512 * k12[i];
        r[6][i] = tb::d61 * k1[i] + tb::d66 * k6[i] + tb::d67 * k7[i] +
                  tb::d68 * k8[i] + tb::d69 * k9[i] + tb::d610 * k10[i] +
                  tb::d611 * k11[i] + tb::d612 * k12[i];
        r[7][i] = tb::d71 * k1[i] + tb::d76 * k6[i] + tb::d77 * k7[i] +
                  tb::d78 * k8[i] + tb::d79 * k9[i] + tb::d710 * k10[i] +
                  tb::d711 * k11[i] + tb::d712 * k12[i];
      }
      State<N> f14{}, f15{}, f16{};
      for (std::size_t i = 0; i < N; ++i) {
        ytmp[i] = y[i] + hd * (tb::a141 * k1[i] + tb::a147 * k7[i] +
                               tb::a148 * k8[i] + tb::a149 * k9[i] +
                               tb::a1410 * k10[i] + tb::a1411 * k11[i] +
                               tb::a1412 * k12[i] + tb::a1413 * knew[i]);
      }
      rhs(t + tb::c14 * hd, ytmp, f14);
      for (std::size_t i = 0; i < N; ++i) {
        ytmp[i] = y[i] + hd * (tb::a151 * k1[i] + tb::a156 * k6[i] +
                               tb::a157 * k7[i] + tb::a158 * k8[i] +
                               tb::a1511 * k11[i] + tb::a1512 * k12[i] +
                               tb::a1513 * knew[i] + tb::a1514 * f14[i]);
      }
      rhs(t + tb::c15 * hd, ytmp, f15);
      for (std::size_t i = 0; i < N; ++i) {
        ytmp[i] = y[i] + hd * (tb::a161 * k1[i] + tb::a166 * k6[i] +
                               tb::a167 * k7[i] + tb::a168 * k8[i] +
                               tb::a169 * k9[i] + tb::a1613 * knew[i] +
                               tb::a1614 * f14[i] + tb::a1615 * f15[i]);
      }
      rhs(t + tb::c16 * hd, ytmp, f16);
      for (std::size_t i = 0; i < N; ++i) {
        r[4][i] = hd * (r[4][i] + tb::d413 * knew[i] + tb::d414 * f14[i] +
                        tb::d415 * f15[i] + tb::d416 * f16[i]);
        r[5][i] = hd * (r[5][i] + tb::d513 * knew[i] + tb::d514 * f14[i] +
                        tb::d515 * f15[i] + tb::d516 * f16[i]);
        r[6][i] = hd * (r[6][i] + tb::d613 * knew[i] + tb::d614 * f14[i] +
                        tb::d615 * f15[i] + tb::d616 * f16[i]);
        r[7][i] = hd * (r[7][i] + tb::d713 * knew[i] + tb::d714 * f14[i] +
                        tb::d715 * f15[i] + tb::d716 * f16[i]);
      }

      while (next < samples.size() && (samples[next] - t_new) * dir <= 0.0) {
        const double s = (samples[next] - t) / hd;
        const double s1 = 1.0 - s;
        State<N> ys{};
        for (std::size_t i = 0; i < N; ++i) {
          const double q6 = r[6][i] + s * r[7][i];
          const double q5 = r[5][i] + s1 * q6;
          const double q4 = r[4][i] + s * q5;
          const double q3 = r[3][i] + s1 * q4;
          const double q2 = r[2][i] + s * q3;
          const double q1 = r[1][i] + s1 * q2;
          ys[i] = r[0][i] + s * q1;
        }
        sink(next, samples[next], ys);
        ++next;
      }
    }

    double fac;
    if (err == 0.0) {
      fac = tb::ctrl_max_scale;
    } else {
      fac = std::clamp(tb::ctrl_safe * std::pow(err, -tb::ctrl_alpha),
                       tb::ctrl_min_scale, tb::ctrl_max_scale);
    }
    if (was_rejected) {
      fac = std::min(fac, 1.0);  // no growth right after a rejection
    }
    h = h_use * fac;
    was_rejected = false;

    t = t_new;
    y = ynew;
    k1 = knew;
  }

  // numerical stragglers: samples past t1 by round-off get the final state
  while (next < samples.size()) {
    sink(next, samples[next], y);
    ++next;
  }
  return y;
}

// Convenience overload without sampling.
template <std::size_t N, class Rhs>
State<N> integrate(Rhs&& rhs, double t0, double t1, State<N> y,
                   const StepControl& ctrl) {
  return integrate<N>(
      std::forward<Rhs>(rhs), t0, t1, y, ctrl, std::span<const double>{},
      [](std::size_t, double, const State<N>&) {});
}

}  // namespace lz::ode
