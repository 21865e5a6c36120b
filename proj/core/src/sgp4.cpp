// SGP4/SDP4 analytic propagation (Spacetrack Report #3 lineage, with the
// 2006 Vallado/Crawford/Hujsak/Kelso corrections). Variable names follow
// the published code so the two can be compared line by line.

#include <cmath>
#include <numbers>

#include "rgss/orbit.hpp"

namespace rgss {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double twopi = 2.0 * std::numbers::pi;
constexpr double deg2rad = pi / 180.0;
constexpr double x2o3 = 2.0 / 3.0;

// WGS-72 gravity model, as used to generate element sets.
constexpr double mu = 398600.8;
constexpr double radiusearthkm = 6378.135;
const double xke = 60.0 / std::sqrt(radiusearthkm * radiusearthkm * radiusearthkm / mu);
const double tumin = 1.0 / xke;
constexpr double j2 = 0.001082616;
constexpr double j3 = -0.00000253881;
constexpr double j4 = -0.00000165597;
constexpr double j3oj2 = j3 / j2;

double gstime(double jdut1) {
    const double tut1 = (jdut1 - 2451545.0) / 36525.0;
    double temp = -6.2e-6 * tut1 * tut1 * tut1 + 0.093104 * tut1 * tut1 +
                  (876600.0 * 3600 + 8640184.812866) * tut1 + 67310.54841;
    temp = std::fmod(temp * deg2rad / 240.0, twopi);
    if (temp < 0.0) temp += twopi;
    return temp;
}

}  // namespace

struct Sgp4Model::Record {
    // near earth
    int isimp = 0;
    char method = 'n';
    double aycof = 0, con41 = 0, cc1 = 0, cc4 = 0, cc5 = 0, d2 = 0, d3 = 0, d4 = 0, delmo = 0, eta = 0,
           argpdot = 0, omgcof = 0, sinmao = 0, t2cof = 0, t3cof = 0, t4cof = 0, t5cof = 0, x1mth2 = 0,
           x7thm1 = 0, mdot = 0, nodedot = 0, xlcof = 0, xmcof = 0, nodecf = 0;
    // deep space
    int irez = 0;
    double d2201 = 0, d2211 = 0, d3210 = 0, d3222 = 0, d4410 = 0, d4422 = 0, d5220 = 0, d5232 = 0,
           d5421 = 0, d5433 = 0, dedt = 0, del1 = 0, del2 = 0, del3 = 0, didt = 0, dmdt = 0, dnodt = 0,
           domdt = 0, e3 = 0, ee2 = 0, peo = 0, pgho = 0, pho = 0, pinco = 0, plo = 0, se2 = 0, se3 = 0,
           sgh2 = 0, sgh3 = 0, sgh4 = 0, sh2 = 0, sh3 = 0, si2 = 0, si3 = 0, sl2 = 0, sl3 = 0, sl4 = 0,
           gsto = 0, xfact = 0, xgh2 = 0, xgh3 = 0, xgh4 = 0, xh2 = 0, xh3 = 0, xi2 = 0, xi3 = 0, xl2 = 0,
           xl3 = 0, xl4 = 0, xlamo = 0, zmol = 0, zmos = 0, atime = 0, xli = 0, xni = 0;
    // elements
    double bstar = 0, ecco = 0, argpo = 0, inclo = 0, mo = 0, no_kozai = 0, no_unkozai = 0, nodeo = 0;
    double a = 0;
};

namespace {

using Record = Sgp4Model::Record;

struct DsComOut {
    double snodm, cnodm, sinim, cosim, sinomm, cosomm, day, em, emsq, gam, rtemsq;
    double s1, s2, s3, s4, s5, s6, s7, ss1, ss2, ss3, ss4, ss5, ss6, ss7;
    double sz1, sz2, sz3, sz11, sz12, sz13, sz21, sz22, sz23, sz31, sz32, sz33;
    double nm, z1, z2, z3, z11, z12, z13, z21, z22, z23, z31, z32, z33;
};

// Long-period lunar/solar periodics; zero at epoch by construction.
void dpper(const Record& r, double t, bool init, double& ep, double& inclp, double& nodep, double& argpp,
           double& mp) {
    constexpr double zns = 1.19459e-5, zes = 0.01675, znl = 1.5835218e-4, zel = 0.05490;

    double zm = init ? r.zmos : r.zmos + zns * t;
    double zf = zm + 2.0 * zes * std::sin(zm);
    double sinzf = std::sin(zf);
    double f2 = 0.5 * sinzf * sinzf - 0.25;
    double f3 = -0.5 * sinzf * std::cos(zf);
    const double ses = r.se2 * f2 + r.se3 * f3;
    const double sis = r.si2 * f2 + r.si3 * f3;
    const double sls = r.sl2 * f2 + r.sl3 * f3 + r.sl4 * sinzf;
    const double sghs = r.sgh2 * f2 + r.sgh3 * f3 + r.sgh4 * sinzf;
    const double shs = r.sh2 * f2 + r.sh3 * f3;

    zm = init ? r.zmol : r.zmol + znl * t;
    zf = zm + 2.0 * zel * std::sin(zm);
    sinzf = std::sin(zf);
    f2 = 0.5 * sinzf * sinzf - 0.25;
    f3 = -0.5 * sinzf * std::cos(zf);
    const double sel = r.ee2 * f2 + r.e3 * f3;
    const double sil = r.xi2 * f2 + r.xi3 * f3;
    const double sll = r.xl2 * f2 + r.xl3 * f3 + r.xl4 * sinzf;
    const double sghl = r.xgh2 * f2 + r.xgh3 * f3 + r.xgh4 * sinzf;
    const double shll = r.xh2 * f2 + r.xh3 * f3;

    double pe = ses + sel;
    double pinc = sis + sil;
    double pl = sls + sll;
    double pgh = sghs + sghl;
    double ph = shs + shll;

    if (init) return;

    pe -= r.peo;
    pinc -= r.pinco;
    pl -= r.plo;
    pgh -= r.pgho;
    ph -= r.pho;
    inclp += pinc;
    ep += pe;
    const double sinip = std::sin(inclp);
    const double cosip = std::cos(inclp);

    // Lyddane choice on the perturbed inclination (GSFC variant).
    if (inclp >= 0.2) {
        ph /= sinip;
        pgh -= cosip * ph;
        argpp += pgh;
        nodep += ph;
        mp += pl;
    } else {
        const double sinop = std::sin(nodep);
        const double cosop = std::cos(nodep);
        double alfdp = sinip * sinop;
        double betdp = sinip * cosop;
        const double dalf = ph * cosop + pinc * cosip * sinop;
        const double dbet = -ph * sinop + pinc * cosip * cosop;
        alfdp += dalf;
        betdp += dbet;
        nodep = std::fmod(nodep, twopi);
        const double xls = mp + argpp + pl + pgh + (cosip - pinc * sinip) * nodep;
        const double xnoh = nodep;
        nodep = std::atan2(alfdp, betdp);
        if (std::fabs(xnoh - nodep) > pi) {
            nodep += (nodep < xnoh) ? twopi : -twopi;
        }
        mp += pl;
        argpp = xls - mp - cosip * nodep;
    }
}

DsComOut dscom(double epoch, double ep, double argpp, double tc, double inclp, double nodep, double np, Record& r) {
    constexpr double zes = 0.01675, zel = 0.05490, c1ss = 2.9864797e-6, c1l = 4.7968065e-7,
                     zsinis = 0.39785416, zcosis = 0.91744867, zcosgs = 0.1945905, zsings = -0.98088458;
    DsComOut o{};
    o.nm = np;
    o.em = ep;
    o.snodm = std::sin(nodep);
    o.cnodm = std::cos(nodep);
    o.sinomm = std::sin(argpp);
    o.cosomm = std::cos(argpp);
    o.sinim = std::sin(inclp);
    o.cosim = std::cos(inclp);
    o.emsq = o.em * o.em;
    const double betasq = 1.0 - o.emsq;
    o.rtemsq = std::sqrt(betasq);

    r.peo = r.pinco = r.plo = r.pgho = r.pho = 0.0;
    o.day = epoch + 18261.5 + tc / 1440.0;
    const double xnodce = std::fmod(4.5236020 - 9.2422029e-4 * o.day, twopi);
    const double stem = std::sin(xnodce);
    const double ctem = std::cos(xnodce);
    const double zcosil = 0.91375164 - 0.03568096 * ctem;
    const double zsinil = std::sqrt(1.0 - zcosil * zcosil);
    const double zsinhl = 0.089683511 * stem / zsinil;
    const double zcoshl = std::sqrt(1.0 - zsinhl * zsinhl);
    o.gam = 5.8351514 + 0.0019443680 * o.day;
    double zx = 0.39785416 * stem / zsinil;
    const double zy = zcoshl * ctem + 0.91744867 * zsinhl * stem;
    zx = std::atan2(zx, zy);
    zx = o.gam + zx - xnodce;
    const double zcosgl = std::cos(zx);
    const double zsingl = std::sin(zx);

    double zcosg = zcosgs, zsing = zsings, zcosi = zcosis, zsini = zsinis;
    double zcosh = o.cnodm, zsinh = o.snodm;
    double cc = c1ss;
    const double xnoi = 1.0 / o.nm;

    for (int lsflg = 1; lsflg <= 2; ++lsflg) {
        const double a1 = zcosg * zcosh + zsing * zcosi * zsinh;
        const double a3 = -zsing * zcosh + zcosg * zcosi * zsinh;
        const double a7 = -zcosg * zsinh + zsing * zcosi * zcosh;
        const double a8 = zsing * zsini;
        const double a9 = zsing * zsinh + zcosg * zcosi * zcosh;
        const double a10 = zcosg * zsini;
        const double a2 = o.cosim * a7 + o.sinim * a8;
        const double a4 = o.cosim * a9 + o.sinim * a10;
        const double a5 = -o.sinim * a7 + o.cosim * a8;
        const double a6 = -o.sinim * a9 + o.cosim * a10;

        const double x1 = a1 * o.cosomm + a2 * o.sinomm;
        const double x2 = a3 * o.cosomm + a4 * o.sinomm;
        const double x3 = -a1 * o.sinomm + a2 * o.cosomm;
        const double x4 = -a3 * o.sinomm + a4 * o.cosomm;
        const double x5 = a5 * o.sinomm;
        const double x6 = a6 * o.sinomm;
        const double x7 = a5 * o.cosomm;
        const double x8 = a6 * o.cosomm;

        o.z31 = 12.0 * x1 * x1 - 3.0 * x3 * x3;
        o.z32 = 24.0 * x1 * x2 - 6.0 * x3 * x4;
        o.z33 = 12.0 * x2 * x2 - 3.0 * x4 * x4;
        o.z1 = 3.0 * (a1 * a1 + a2 * a2) + o.z31 * o.emsq;
        o.z2 = 6.0 * (a1 * a3 + a2 * a4) + o.z32 * o.emsq;
        o.z3 = 3.0 * (a3 * a3 + a4 * a4) + o.z33 * o.emsq;
        o.z11 = -6.0 * a1 * a5 + o.emsq * (-24.0 * x1 * x7 - 6.0 * x3 * x5);
        o.z12 = -6.0 * (a1 * a6 + a3 * a5) + o.emsq * (-24.0 * (x2 * x7 + x1 * x8) - 6.0 * (x3 * x6 + x4 * x5));
        o.z13 = -6.0 * a3 * a6 + o.emsq * (-24.0 * x2 * x8 - 6.0 * x4 * x6);
        o.z21 = 6.0 * a2 * a5 + o.emsq * (24.0 * x1 * x5 - 6.0 * x3 * x7);
        o.z22 = 6.0 * (a4 * a5 + a2 * a6) + o.emsq * (24.0 * (x2 * x5 + x1 * x6) - 6.0 * (x4 * x7 + x3 * x8));
        o.z23 = 6.0 * a4 * a6 + o.emsq * (24.0 * x2 * x6 - 6.0 * x4 * x8);
        o.z1 = o.z1 + o.z1 + betasq * o.z31;
        o.z2 = o.z2 + o.z2 + betasq * o.z32;
        o.z3 = o.z3 + o.z3 + betasq * o.z33;
        o.s3 = cc * xnoi;
        o.s2 = -0.5 * o.s3 / o.rtemsq;
        o.s4 = o.s3 * o.rtemsq;
        o.s1 = -15.0 * o.em * o.s4;
        o.s5 = x1 * x3 + x2 * x4;
        o.s6 = x2 * x3 + x1 * x4;
        o.s7 = x2 * x4 - x1 * x3;

        if (lsflg == 1) {
            o.ss1 = o.s1;
            o.ss2 = o.s2;
            o.ss3 = o.s3;
            o.ss4 = o.s4;
            o.ss5 = o.s5;
            o.ss6 = o.s6;
            o.ss7 = o.s7;
            o.sz1 = o.z1;
            o.sz2 = o.z2;
            o.sz3 = o.z3;
            o.sz11 = o.z11;
            o.sz12 = o.z12;
            o.sz13 = o.z13;
            o.sz21 = o.z21;
            o.sz22 = o.z22;
            o.sz23 = o.z23;
            o.sz31 = o.z31;
            o.sz32 = o.z32;
            o.sz33 = o.z33;
            zcosg = zcosgl;
            zsing = zsingl;
            zcosi = zcosil;
            zsini = zsinil;
            zcosh = zcoshl * o.cnodm + zsinhl * o.snodm;
            zsinh = o.snodm * zcoshl - o.cnodm * zsinhl;
            cc = c1l;
        }
    }

    r.zmol = std::fmod(4.7199672 + 0.22997150 * o.day - o.gam, twopi);
    r.zmos = std::fmod(6.2565837 + 0.017201977 * o.day, twopi);

    r.se2 = 2.0 * o.ss1 * o.ss6;
    r.se3 = 2.0 * o.ss1 * o.ss7;
    r.si2 = 2.0 * o.ss2 * o.sz12;
    r.si3 = 2.0 * o.ss2 * (o.sz13 - o.sz11);
    r.sl2 = -2.0 * o.ss3 * o.sz2;
    r.sl3 = -2.0 * o.ss3 * (o.sz3 - o.sz1);
    r.sl4 = -2.0 * o.ss3 * (-21.0 - 9.0 * o.emsq) * zes;
    r.sgh2 = 2.0 * o.ss4 * o.sz32;
    r.sgh3 = 2.0 * o.ss4 * (o.sz33 - o.sz31);
    r.sgh4 = -18.0 * o.ss4 * zes;
    r.sh2 = -2.0 * o.ss2 * o.sz22;
    r.sh3 = -2.0 * o.ss2 * (o.sz23 - o.sz21);

    r.ee2 = 2.0 * o.s1 * o.s6;
    r.e3 = 2.0 * o.s1 * o.s7;
    r.xi2 = 2.0 * o.s2 * o.z12;
    r.xi3 = 2.0 * o.s2 * (o.z13 - o.z11);
    r.xl2 = -2.0 * o.s3 * o.z2;
    r.xl3 = -2.0 * o.s3 * (o.z3 - o.z1);
    r.xl4 = -2.0 * o.s3 * (-21.0 - 9.0 * o.emsq) * zel;
    r.xgh2 = 2.0 * o.s4 * o.z32;
    r.xgh3 = 2.0 * o.s4 * (o.z33 - o.z31);
    r.xgh4 = -18.0 * o.s4 * zel;
    r.xh2 = -2.0 * o.s2 * o.z22;
    r.xh3 = -2.0 * o.s2 * (o.z23 - o.z21);
    return o;
}

// Deep-space secular rates and resonance terms. Updates em/argpm/inclm/mm/nm/nodem.
void dsinit(Record& r, const DsComOut& c, double t, double tc, double xpidot, double eccsq, double& em,
            double& argpm, double& inclm, double& mm, double& nm, double& nodem) {
    constexpr double q22 = 1.7891679e-6, q31 = 2.1460748e-6, q33 = 2.2123015e-7, root22 = 1.7891679e-6,
                     root44 = 7.3636953e-9, root54 = 2.1765803e-9, rptim = 4.37526908801129966e-3,
                     root32 = 3.7393792e-7, root52 = 1.1428639e-7, znl = 1.5835218e-4, zns = 1.19459e-5;

    double emsq = c.emsq;
    const double cosim = c.cosim, sinim = c.sinim;

    r.irez = 0;
    if (nm < 0.0052359877 && nm > 0.0034906585) r.irez = 1;
    if (nm >= 8.26e-3 && nm <= 9.24e-3 && em >= 0.5) r.irez = 2;

    const double ses = c.ss1 * zns * c.ss5;
    const double sis = c.ss2 * zns * (c.sz11 + c.sz13);
    const double sls = -zns * c.ss3 * (c.sz1 + c.sz3 - 14.0 - 6.0 * emsq);
    const double sghs = c.ss4 * zns * (c.sz31 + c.sz33 - 6.0);
    double shs = -zns * c.ss2 * (c.sz21 + c.sz23);
    if (inclm < 5.2359877e-2 || inclm > pi - 5.2359877e-2) shs = 0.0;
    if (sinim != 0.0) shs = shs / sinim;
    const double sgs = sghs - cosim * shs;

    r.dedt = ses + c.s1 * znl * c.s5;
    r.didt = sis + c.s2 * znl * (c.z11 + c.z13);
    r.dmdt = sls - znl * c.s3 * (c.z1 + c.z3 - 14.0 - 6.0 * emsq);
    const double sghl = c.s4 * znl * (c.z31 + c.z33 - 6.0);
    double shll = -znl * c.s2 * (c.z21 + c.z23);
    if (inclm < 5.2359877e-2 || inclm > pi - 5.2359877e-2) shll = 0.0;
    r.domdt = sgs + sghl;
    r.dnodt = shs;
    if (sinim != 0.0) {
        r.domdt = r.domdt - cosim / sinim * shll;
        r.dnodt = r.dnodt + shll / sinim;
    }

    const double dndt = 0.0;
    const double theta = std::fmod(r.gsto + tc * rptim, twopi);
    em = em + r.dedt * t;
    inclm = inclm + r.didt * t;
    argpm = argpm + r.domdt * t;
    nodem = nodem + r.dnodt * t;
    mm = mm + r.dmdt * t;

    if (r.irez == 0) return;

    const double aonv = std::pow(nm / xke, x2o3);

    if (r.irez == 2) {
        // geopotential resonance for 12 hour orbits
        const double cosisq = cosim * cosim;
        const double emo = em;
        em = r.ecco;
        const double emsqo = emsq;
        emsq = eccsq;
        const double eoc = em * emsq;
        const double g201 = -0.306 - (em - 0.64) * 0.440;
        double g211, g310, g322, g410, g422, g520, g521, g532, g533;
        if (em <= 0.65) {
            g211 = 3.616 - 13.2470 * em + 16.2900 * emsq;
            g310 = -19.302 + 117.3900 * em - 228.4190 * emsq + 156.5910 * eoc;
            g322 = -18.9068 + 109.7927 * em - 214.6334 * emsq + 146.5816 * eoc;
            g410 = -41.122 + 242.6940 * em - 471.0940 * emsq + 313.9530 * eoc;
            g422 = -146.407 + 841.8800 * em - 1629.014 * emsq + 1083.4350 * eoc;
            g520 = -532.114 + 3017.977 * em - 5740.032 * emsq + 3708.2760 * eoc;
        } else {
            g211 = -72.099 + 331.819 * em - 508.738 * emsq + 266.724 * eoc;
            g310 = -346.844 + 1582.851 * em - 2415.925 * emsq + 1246.113 * eoc;
            g322 = -342.585 + 1554.908 * em - 2366.899 * emsq + 1215.972 * eoc;
            g410 = -1052.797 + 4758.686 * em - 7193.992 * emsq + 3651.957 * eoc;
            g422 = -3581.690 + 16178.110 * em - 24462.770 * emsq + 12422.520 * eoc;
            if (em > 0.715)
                g520 = -5149.66 + 29936.92 * em - 54087.36 * emsq + 31324.56 * eoc;
            else
                g520 = 1464.74 - 4664.75 * em + 3763.64 * emsq;
        }
        if (em < 0.7) {
            g533 = -919.22770 + 4988.6100 * em - 9064.7700 * emsq + 5542.21 * eoc;
            g521 = -822.71072 + 4568.6173 * em - 8491.4146 * emsq + 5337.524 * eoc;
            g532 = -853.66600 + 4690.2500 * em - 8624.7700 * emsq + 5341.4 * eoc;
        } else {
            g533 = -37995.780 + 161616.52 * em - 229838.20 * emsq + 109377.94 * eoc;
            g521 = -51752.104 + 218913.95 * em - 309468.16 * emsq + 146349.42 * eoc;
            g532 = -40023.880 + 170470.89 * em - 242699.48 * emsq + 115605.82 * eoc;
        }

        const double sini2 = sinim * sinim;
        const double f220 = 0.75 * (1.0 + 2.0 * cosim + cosisq);
        const double f221 = 1.5 * sini2;
        const double f321 = 1.875 * sinim * (1.0 - 2.0 * cosim - 3.0 * cosisq);
        const double f322 = -1.875 * sinim * (1.0 + 2.0 * cosim - 3.0 * cosisq);
        const double f441 = 35.0 * sini2 * f220;
        const double f442 = 39.3750 * sini2 * sini2;
        const double f522 =
            9.84375 * sinim *
            (sini2 * (1.0 - 2.0 * cosim - 5.0 * cosisq) + 0.33333333 * (-2.0 + 4.0 * cosim + 6.0 * cosisq));
        const double f523 = sinim * (4.92187512 * sini2 * (-2.0 - 4.0 * cosim + 10.0 * cosisq) +
                                     6.56250012 * (1.0 + 2.0 * cosim - 3.0 * cosisq));
        const double f542 =
            29.53125 * sinim * (2.0 - 8.0 * cosim + cosisq * (-12.0 + 8.0 * cosim + 10.0 * cosisq));
        const double f543 =
            29.53125 * sinim * (-2.0 - 8.0 * cosim + cosisq * (12.0 + 8.0 * cosim - 10.0 * cosisq));

        const double xno2 = nm * nm;
        const double ainv2 = aonv * aonv;
        double temp1 = 3.0 * xno2 * ainv2;
        double temp = temp1 * root22;
        r.d2201 = temp * f220 * g201;
        r.d2211 = temp * f221 * g211;
        temp1 = temp1 * aonv;
        temp = temp1 * root32;
        r.d3210 = temp * f321 * g310;
        r.d3222 = temp * f322 * g322;
        temp1 = temp1 * aonv;
        temp = 2.0 * temp1 * root44;
        r.d4410 = temp * f441 * g410;
        r.d4422 = temp * f442 * g422;
        temp1 = temp1 * aonv;
        temp = temp1 * root52;
        r.d5220 = temp * f522 * g520;
        r.d5232 = temp * f523 * g532;
        temp = 2.0 * temp1 * root54;
        r.d5421 = temp * f542 * g521;
        r.d5433 = temp * f543 * g533;
        r.xlamo = std::fmod(r.mo + r.nodeo + r.nodeo - theta - theta, twopi);
        r.xfact = r.mdot + r.dmdt + 2.0 * (r.nodedot + r.dnodt - rptim) - r.no_unkozai;
        em = emo;
        emsq = emsqo;
    }

    if (r.irez == 1) {
        // synchronous resonance terms
        const double g200 = 1.0 + emsq * (-2.5 + 0.8125 * emsq);
        const double g310 = 1.0 + 2.0 * emsq;
        const double g300 = 1.0 + emsq * (-6.0 + 6.60937 * emsq);
        const double f220 = 0.75 * (1.0 + cosim) * (1.0 + cosim);
        const double f311 = 0.9375 * sinim * sinim * (1.0 + 3.0 * cosim) - 0.75 * (1.0 + cosim);
        double f330 = 1.0 + cosim;
        f330 = 1.875 * f330 * f330 * f330;
        r.del1 = 3.0 * nm * nm * aonv * aonv;
        r.del2 = 2.0 * r.del1 * f220 * g200 * q22;
        r.del3 = 3.0 * r.del1 * f330 * g300 * q33 * aonv;
        r.del1 = r.del1 * f311 * g310 * q31 * aonv;
        r.xlamo = std::fmod(r.mo + r.nodeo + r.argpo - theta, twopi);
        r.xfact = r.mdot + xpidot - rptim + r.dmdt + r.domdt + r.dnodt - r.no_unkozai;
    }

    r.xli = r.xlamo;
    r.xni = r.no_unkozai;
    r.atime = 0.0;
    nm = r.no_unkozai + dndt;
}

// Deep-space secular effects and resonance integration. The integrator
// state (atime, xli, xni) is restarted from epoch on every call so that
// propagation stays a pure function of (elements, time).
void dspace(const Record& r, double t, double tc, double& em, double& argpm, double& inclm, double& mm,
            double& nodem, double& nm) {
    constexpr double fasx2 = 0.13130908, fasx4 = 2.8843198, fasx6 = 0.37448087, g22 = 5.7686396,
                     g32 = 0.95240898, g44 = 1.8014998, g52 = 1.0508330, g54 = 4.4108898,
                     rptim = 4.37526908801129966e-3, stepp = 720.0, stepn = -720.0, step2 = 259200.0;

    const double theta = std::fmod(r.gsto + tc * rptim, twopi);
    em = em + r.dedt * t;
    inclm = inclm + r.didt * t;
    argpm = argpm + r.domdt * t;
    nodem = nodem + r.dnodt * t;
    mm = mm + r.dmdt * t;

    if (r.irez == 0) return;

    double atime = 0.0;
    double xni = r.no_unkozai;
    double xli = r.xlamo;
    const double delt = t > 0.0 ? stepp : stepn;

    double ft = 0.0, xndt = 0.0, xldot = 0.0, xnddt = 0.0;
    for (;;) {
        if (r.irez != 2) {
            xndt = r.del1 * std::sin(xli - fasx2) + r.del2 * std::sin(2.0 * (xli - fasx4)) +
                   r.del3 * std::sin(3.0 * (xli - fasx6));
            xldot = xni + r.xfact;
            xnddt = r.del1 * std::cos(xli - fasx2) + 2.0 * r.del2 * std::cos(2.0 * (xli - fasx4)) +
                    3.0 * r.del3 * std::cos(3.0 * (xli - fasx6));
            xnddt = xnddt * xldot;
        } else {
            const double xomi = r.argpo + r.argpdot * atime;
            const double x2omi = xomi + xomi;
            const double x2li = xli + xli;
            xndt = r.d2201 * std::sin(x2omi + xli - g22) + r.d2211 * std::sin(xli - g22) +
                   r.d3210 * std::sin(xomi + xli - g32) + r.d3222 * std::sin(-xomi + xli - g32) +
                   r.d4410 * std::sin(x2omi + x2li - g44) + r.d4422 * std::sin(x2li - g44) +
                   r.d5220 * std::sin(xomi + xli - g52) + r.d5232 * std::sin(-xomi + xli - g52) +
                   r.d5421 * std::sin(xomi + x2li - g54) + r.d5433 * std::sin(-xomi + x2li - g54);
            xldot = xni + r.xfact;
            xnddt = r.d2201 * std::cos(x2omi + xli - g22) + r.d2211 * std::cos(xli - g22) +
                    r.d3210 * std::cos(xomi + xli - g32) + r.d3222 * std::cos(-xomi + xli - g32) +
                    r.d5220 * std::cos(xomi + xli - g52) + r.d5232 * std::cos(-xomi + xli - g52) +
                    2.0 * (r.d4410 * std::cos(x2omi + x2li - g44) + r.d4422 * std::cos(x2li - g44) +
                           r.d5421 * std::cos(xomi + x2li - g54) + r.d5433 * std::cos(-xomi + x2li - g54));
            xnddt = xnddt * xldot;
        }

        if (std::fabs(t - atime) >= stepp) {
            xli = xli + xldot * delt + xndt * step2;
            xni = xni + xndt * delt + xnddt * step2;
            atime = atime + delt;
        } else {
            ft = t - atime;
            break;
        }
    }

    nm = xni + xndt * ft + xnddt * ft * ft * 0.5;
    const double xl = xli + xldot * ft + xndt * ft * ft * 0.5;
    if (r.irez != 1) {
        mm = xl - 2.0 * nodem + 2.0 * theta;
    } else {
        mm = xl - nodem - argpm + theta;
    }
    const double dndt = nm - r.no_unkozai;
    nm = r.no_unkozai + dndt;
}

}  // namespace

Sgp4Model::Sgp4Model(const TwoLineElements& tle) {
    constexpr double xpdotp = 1440.0 / (2.0 * pi);
    constexpr double temp4 = 1.5e-12;

    auto rec = std::make_shared<Record>();
    Record& r = *rec;

    r.no_kozai = tle.mean_motion_rev_per_day / xpdotp;
    r.bstar = tle.bstar;
    r.ecco = tle.eccentricity;
    r.inclo = tle.inclination_deg * deg2rad;
    r.nodeo = tle.raan_deg * deg2rad;
    r.argpo = tle.arg_perigee_deg * deg2rad;
    r.mo = tle.mean_anomaly_deg * deg2rad;

    const double epoch = (tle.epoch_jd.day + tle.epoch_jd.fraction) - 2433281.5;

    const double ss = 78.0 / radiusearthkm + 1.0;
    const double qzms2ttemp = (120.0 - 78.0) / radiusearthkm;
    const double qzms2t = qzms2ttemp * qzms2ttemp * qzms2ttemp * qzms2ttemp;

    // initl: un-Kozai the mean motion and set up common terms
    const double eccsq = r.ecco * r.ecco;
    const double omeosq = 1.0 - eccsq;
    const double rteosq = std::sqrt(omeosq);
    const double cosio = std::cos(r.inclo);
    const double cosio2 = cosio * cosio;
    const double ak = std::pow(xke / r.no_kozai, x2o3);
    const double d1 = 0.75 * j2 * (3.0 * cosio2 - 1.0) / (rteosq * omeosq);
    double del = d1 / (ak * ak);
    const double adel = ak * (1.0 - del * del - del * (1.0 / 3.0 + 134.0 * del * del / 81.0));
    del = d1 / (adel * adel);
    r.no_unkozai = r.no_kozai / (1.0 + del);
    const double ao = std::pow(xke / r.no_unkozai, x2o3);
    const double sinio = std::sin(r.inclo);
    const double po = ao * omeosq;
    const double con42 = 1.0 - 5.0 * cosio2;
    r.con41 = -con42 - cosio2 - cosio2;
    const double posq = po * po;
    const double rp = ao * (1.0 - r.ecco);
    r.gsto = gstime(epoch + 2433281.5);

    r.a = std::pow(r.no_unkozai * tumin, -2.0 / 3.0);

    if (omeosq >= 0.0 || r.no_unkozai >= 0.0) {
        r.isimp = 0;
        if (rp < 220.0 / radiusearthkm + 1.0) r.isimp = 1;
        double sfour = ss;
        double qzms24 = qzms2t;
        const double perige = (rp - 1.0) * radiusearthkm;

        // for perigees below 156 km, s and qoms2t are altered
        if (perige < 156.0) {
            sfour = perige - 78.0;
            if (perige < 98.0) sfour = 20.0;
            const double qzms24temp = (120.0 - sfour) / radiusearthkm;
            qzms24 = qzms24temp * qzms24temp * qzms24temp * qzms24temp;
            sfour = sfour / radiusearthkm + 1.0;
        }
        const double pinvsq = 1.0 / posq;

        const double tsi = 1.0 / (ao - sfour);
        r.eta = ao * r.ecco * tsi;
        const double etasq = r.eta * r.eta;
        const double eeta = r.ecco * r.eta;
        const double psisq = std::fabs(1.0 - etasq);
        const double coef = qzms24 * std::pow(tsi, 4.0);
        const double coef1 = coef / std::pow(psisq, 3.5);
        const double cc2 = coef1 * r.no_unkozai *
                           (ao * (1.0 + 1.5 * etasq + eeta * (4.0 + etasq)) +
                            0.375 * j2 * tsi / psisq * r.con41 * (8.0 + 3.0 * etasq * (8.0 + etasq)));
        r.cc1 = r.bstar * cc2;
        double cc3 = 0.0;
        if (r.ecco > 1.0e-4) cc3 = -2.0 * coef * tsi * j3oj2 * r.no_unkozai * sinio / r.ecco;
        r.x1mth2 = 1.0 - cosio2;
        r.cc4 = 2.0 * r.no_unkozai * coef1 * ao * omeosq *
                (r.eta * (2.0 + 0.5 * etasq) + r.ecco * (0.5 + 2.0 * etasq) -
                 j2 * tsi / (ao * psisq) *
                     (-3.0 * r.con41 * (1.0 - 2.0 * eeta + etasq * (1.5 - 0.5 * eeta)) +
                      0.75 * r.x1mth2 * (2.0 * etasq - eeta * (1.0 + etasq)) * std::cos(2.0 * r.argpo)));
        r.cc5 = 2.0 * coef1 * ao * omeosq * (1.0 + 2.75 * (etasq + eeta) + eeta * etasq);
        const double cosio4 = cosio2 * cosio2;
        const double temp1 = 1.5 * j2 * pinvsq * r.no_unkozai;
        const double temp2 = 0.5 * temp1 * j2 * pinvsq;
        const double temp3 = -0.46875 * j4 * pinvsq * pinvsq * r.no_unkozai;
        r.mdot = r.no_unkozai + 0.5 * temp1 * rteosq * r.con41 +
                 0.0625 * temp2 * rteosq * (13.0 - 78.0 * cosio2 + 137.0 * cosio4);
        r.argpdot = -0.5 * temp1 * con42 + 0.0625 * temp2 * (7.0 - 114.0 * cosio2 + 395.0 * cosio4) +
                    temp3 * (3.0 - 36.0 * cosio2 + 49.0 * cosio4);
        const double xhdot1 = -temp1 * cosio;
        r.nodedot = xhdot1 + (0.5 * temp2 * (4.0 - 19.0 * cosio2) + 2.0 * temp3 * (3.0 - 7.0 * cosio2)) * cosio;
        const double xpidot = r.argpdot + r.nodedot;
        r.omgcof = r.bstar * cc3 * std::cos(r.argpo);
        r.xmcof = 0.0;
        if (r.ecco > 1.0e-4) r.xmcof = -x2o3 * coef * r.bstar / eeta;
        r.nodecf = 3.5 * omeosq * xhdot1 * r.cc1;
        r.t2cof = 1.5 * r.cc1;
        if (std::fabs(cosio + 1.0) > 1.5e-12)
            r.xlcof = -0.25 * j3oj2 * sinio * (3.0 + 5.0 * cosio) / (1.0 + cosio);
        else
            r.xlcof = -0.25 * j3oj2 * sinio * (3.0 + 5.0 * cosio) / temp4;
        r.aycof = -0.5 * j3oj2 * sinio;
        const double delmotemp = 1.0 + r.eta * std::cos(r.mo);
        r.delmo = delmotemp * delmotemp * delmotemp;
        r.sinmao = std::sin(r.mo);
        r.x7thm1 = 7.0 * cosio2 - 1.0;

        // deep space initialisation
        if (2 * pi / r.no_unkozai >= 225.0) {
            r.method = 'd';
            r.isimp = 1;
            const double tc = 0.0;
            double inclm = r.inclo;
            const DsComOut c = dscom(epoch, r.ecco, r.argpo, tc, r.inclo, r.nodeo, r.no_unkozai, r);
            double ep = r.ecco, inclp = r.inclo, nodep = r.nodeo, argpp = r.argpo, mp = r.mo;
            dpper(r, 0.0, true, ep, inclp, nodep, argpp, mp);
            r.ecco = ep;
            r.inclo = inclp;
            r.nodeo = nodep;
            r.argpo = argpp;
            r.mo = mp;

            double em = c.em, argpm = 0.0, mm = 0.0, nm = c.nm, nodem = 0.0;
            dsinit(r, c, 0.0, tc, xpidot, eccsq, em, argpm, inclm, mm, nm, nodem);
        }

        if (r.isimp != 1) {
            const double cc1sq = r.cc1 * r.cc1;
            r.d2 = 4.0 * ao * tsi * cc1sq;
            const double temp = r.d2 * tsi * r.cc1 / 3.0;
            r.d3 = (17.0 * ao + sfour) * temp;
            r.d4 = 0.5 * temp * ao * tsi * (221.0 * ao + 31.0 * sfour) * r.cc1;
            r.t3cof = r.d2 + 2.0 * cc1sq;
            r.t4cof = 0.25 * (3.0 * r.d3 + r.cc1 * (12.0 * r.d2 + 10.0 * cc1sq));
            r.t5cof = 0.2 * (3.0 * r.d4 + 12.0 * r.cc1 * r.d3 + 6.0 * r.d2 * r.d2 + 15.0 * cc1sq * (2.0 * r.d2 + cc1sq));
        }
    }

    rec_ = std::move(rec);
}

bool Sgp4Model::deep_space() const { return rec_->method == 'd'; }

double Sgp4Model::orbital_period_minutes() const { return twopi / rec_->no_unkozai; }

Sgp4Model::Result Sgp4Model::propagate_minutes(double tsince) const {
    constexpr double temp4 = 1.5e-12;
    const Record& r = *rec_;
    const double vkmpersec = radiusearthkm * xke / 60.0;
    const double t = tsince;

    Result out;

    // secular gravity and atmospheric drag
    const double xmdf = r.mo + r.mdot * t;
    const double argpdf = r.argpo + r.argpdot * t;
    const double nodedf = r.nodeo + r.nodedot * t;
    double argpm = argpdf;
    double mm = xmdf;
    const double t2 = t * t;
    double nodem = nodedf + r.nodecf * t2;
    double tempa = 1.0 - r.cc1 * t;
    double tempe = r.bstar * r.cc4 * t;
    double templ = r.t2cof * t2;

    if (r.isimp != 1) {
        const double delomg = r.omgcof * t;
        const double delmtemp = 1.0 + r.eta * std::cos(xmdf);
        const double delm = r.xmcof * (delmtemp * delmtemp * delmtemp - r.delmo);
        const double temp = delomg + delm;
        mm = xmdf + temp;
        argpm = argpdf - temp;
        const double t3 = t2 * t;
        const double t4 = t3 * t;
        tempa = tempa - r.d2 * t2 - r.d3 * t3 - r.d4 * t4;
        tempe = tempe + r.bstar * r.cc5 * (std::sin(mm) - r.sinmao);
        templ = templ + r.t3cof * t3 + t4 * (r.t4cof + t * r.t5cof);
    }

    double nm = r.no_unkozai;
    double em = r.ecco;
    double inclm = r.inclo;
    if (r.method == 'd') {
        dspace(r, t, t, em, argpm, inclm, mm, nodem, nm);
    }

    if (nm <= 0.0) {
        out.error = 2;
        return out;
    }
    const double am = std::pow(xke / nm, x2o3) * tempa * tempa;
    nm = xke / std::pow(am, 1.5);
    em = em - tempe;

    if (em >= 1.0 || em < -0.001) {
        out.error = 1;
        return out;
    }
    if (em < 1.0e-6) em = 1.0e-6;
    mm = mm + r.no_unkozai * templ;
    double xlm = mm + argpm + nodem;

    nodem = std::fmod(nodem, twopi);
    argpm = std::fmod(argpm, twopi);
    xlm = std::fmod(xlm, twopi);
    mm = std::fmod(xlm - argpm - nodem, twopi);

    // lunar-solar periodics
    const double sinim = std::sin(inclm);
    const double cosim = std::cos(inclm);
    double ep = em;
    double xincp = inclm;
    double argpp = argpm;
    double nodep = nodem;
    double mp = mm;
    double sinip = sinim;
    double cosip = cosim;
    double aycof = r.aycof;
    double xlcof = r.xlcof;
    double con41 = r.con41;
    double x1mth2 = r.x1mth2;
    double x7thm1 = r.x7thm1;

    if (r.method == 'd') {
        dpper(r, t, false, ep, xincp, nodep, argpp, mp);
        if (xincp < 0.0) {
            xincp = -xincp;
            nodep = nodep + pi;
            argpp = argpp - pi;
        }
        if (ep < 0.0 || ep > 1.0) {
            out.error = 3;
            return out;
        }
        sinip = std::sin(xincp);
        cosip = std::cos(xincp);
        aycof = -0.5 * j3oj2 * sinip;
        if (std::fabs(cosip + 1.0) > 1.5e-12)
            xlcof = -0.25 * j3oj2 * sinip * (3.0 + 5.0 * cosip) / (1.0 + cosip);
        else
            xlcof = -0.25 * j3oj2 * sinip * (3.0 + 5.0 * cosip) / temp4;
    }

    // long period periodics
    const double axnl = ep * std::cos(argpp);
    double temp = 1.0 / (am * (1.0 - ep * ep));
    const double aynl = ep * std::sin(argpp) + temp * aycof;
    const double xl = mp + argpp + nodep + temp * xlcof * axnl;

    // Kepler's equation
    const double u = std::fmod(xl - nodep, twopi);
    double eo1 = u;
    double tem5 = 9999.9;
    int ktr = 1;
    double sineo1 = 0.0, coseo1 = 0.0;
    while (std::fabs(tem5) >= 1.0e-12 && ktr <= 10) {
        sineo1 = std::sin(eo1);
        coseo1 = std::cos(eo1);
        tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl;
        tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5;
        if (std::fabs(tem5) >= 0.95) tem5 = tem5 > 0.0 ? 0.95 : -0.95;
        eo1 = eo1 + tem5;
        ktr = ktr + 1;
    }

    // short period preliminary quantities
    const double ecose = axnl * coseo1 + aynl * sineo1;
    const double esine = axnl * sineo1 - aynl * coseo1;
    const double el2 = axnl * axnl + aynl * aynl;
    const double pl = am * (1.0 - el2);
    if (pl < 0.0) {
        out.error = 4;
        return out;
    }

    const double rl = am * (1.0 - ecose);
    const double rdotl = std::sqrt(am) * esine / rl;
    const double rvdotl = std::sqrt(pl) / rl;
    const double betal = std::sqrt(1.0 - el2);
    temp = esine / (1.0 + betal);
    const double sinu = am / rl * (sineo1 - aynl - axnl * temp);
    const double cosu = am / rl * (coseo1 - axnl + aynl * temp);
    double su = std::atan2(sinu, cosu);
    const double sin2u = (cosu + cosu) * sinu;
    const double cos2u = 1.0 - 2.0 * sinu * sinu;
    temp = 1.0 / pl;
    const double temp1 = 0.5 * j2 * temp;
    const double temp2 = temp1 * temp;

    if (r.method == 'd') {
        const double cosisq = cosip * cosip;
        con41 = 3.0 * cosisq - 1.0;
        x1mth2 = 1.0 - cosisq;
        x7thm1 = 7.0 * cosisq - 1.0;
    }

    // short period periodics
    const double mrt = rl * (1.0 - 1.5 * temp2 * betal * con41) + 0.5 * temp1 * x1mth2 * cos2u;
    su = su - 0.25 * temp2 * x7thm1 * sin2u;
    const double xnode = nodep + 1.5 * temp2 * cosip * sin2u;
    const double xinc = xincp + 1.5 * temp2 * cosip * sinip * cos2u;
    const double mvt = rdotl - nm * temp1 * x1mth2 * sin2u / xke;
    const double rvdot = rvdotl + nm * temp1 * (x1mth2 * cos2u + 1.5 * con41) / xke;

    // orientation vectors
    const double sinsu = std::sin(su);
    const double cossu = std::cos(su);
    const double snod = std::sin(xnode);
    const double cnod = std::cos(xnode);
    const double sini = std::sin(xinc);
    const double cosi = std::cos(xinc);
    const double xmx = -snod * cosi;
    const double xmy = cnod * cosi;
    const double ux = xmx * sinsu + cnod * cossu;
    const double uy = xmy * sinsu + snod * cossu;
    const double uz = sini * sinsu;
    const double vx = xmx * cossu - cnod * sinsu;
    const double vy = xmy * cossu - snod * sinsu;
    const double vz = sini * cossu;

    const double mr = mrt * radiusearthkm;
    out.position_km = {mr * ux, mr * uy, mr * uz};
    out.velocity_km_s = {(mvt * ux + rvdot * vx) * vkmpersec, (mvt * uy + rvdot * vy) * vkmpersec,
                         (mvt * uz + rvdot * vz) * vkmpersec};

    if (mrt < 1.0) out.error = 6;
    return out;
}

double gmst_radians(Instant t) {
    const JulianDate jd = to_julian(t);
    return gstime(jd.day + jd.fraction);
}

}  // namespace rgss
