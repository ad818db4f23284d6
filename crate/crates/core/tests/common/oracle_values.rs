// @generated by tools/oracles/generate.py (mpmath, 40 digits). Do not edit.
#![allow(dead_code, clippy::excessive_precision)]

/// (0.3; 0.5)_5
pub const QPOCH_FINITE: (f64, f64) = (5.19803388671875e-1, 0.0);
/// (0.3; 0.5)_inf
pub const QPOCH_INF: (f64, f64) = (5.1011782663398757e-1, 0.0);
/// (0.2+0.3i; 0.6)_inf
pub const QPOCH_INF_COMPLEX: (f64, f64) = (4.291003971841759e-1, -4.8141933788063601e-1);
/// (q; q)_inf, q = 0.5
pub const QPOCH_Q_Q: (f64, f64) = (2.8878809508660242e-1, 0.0);
/// (-0.7; 0.9)_inf
pub const QPOCH_INF_SLOW: (f64, f64) = (4.0855308466713744e+2, 0.0);
/// 2phi1(0.3, 0.4+0.1i; 0.6; 0.5, 0.7)
pub const PHI_2_1: (f64, f64) = (7.3989281091282636, -1.548595904172258);
/// 3phi2(q^-4, 0.3, 0.45; 0.2, 0.55; q, q), q = 0.5
pub const PHI_3_2_TERM: (f64, f64) = (-1.1546051564917284e-2, 0.0);
/// 2phi1(0.2, 0.3; 0.4; 0.5, 0.25)
pub const PHI_2_1_SMALL: (f64, f64) = (1.671595862386067, 0.0);
/// W(0.1; 0.2, 0.3, 0.4, 0.5, 0.6), q = 0.5, summed as an 8phi7 with the explicit +-q sqrt(a) pair
pub const W_EXPLICIT: (f64, f64) = (1.1306171152987806, 0.0);
/// W(0.2; 0.3, 0.45+0.1i, 0.6, 0.35, 0.55), q = 0.5
pub const W_SAMPLE: (f64, f64) = (1.2738625340415715, -2.4946168148870631e-1);
/// W(0.2; q^-3, 0.3, 0.45, 0.6, 0.35), q = 0.5
pub const W_TERM: (f64, f64) = (8.2746708182608696e-1, 0.0);
/// A'_0, q=0.5 alpha=0.3 beta=0.25 gamma=0.2 delta=0.15 eps=0.5
pub const COEF_A_UPPER_0: (f64, f64) = (1.5201727395397032, 0.0);
/// B'_0
pub const COEF_B_UPPER_0: (f64, f64) = (6.6745879643288251e-2, 0.0);
/// a'_0
pub const COEF_A_0: (f64, f64) = (2.2974804748367524e-1, 0.0);
/// b'^2_0
pub const COEF_B2_0: (f64, f64) = (9.2581546720281255e-2, 0.0);
/// A'_1, q=0.5 alpha=0.3 beta=0.25 gamma=0.2 delta=0.15 eps=0.5
pub const COEF_A_UPPER_1: (f64, f64) = (1.5916425086365977, 0.0);
/// B'_1
pub const COEF_B_UPPER_1: (f64, f64) = (1.0610590655674626e-1, 0.0);
/// a'_1
pub const COEF_A_1: (f64, f64) = (1.1891825147332268e-1, 0.0);
/// b'^2_1
pub const COEF_B2_1: (f64, f64) = (1.6129930665171271e-1, 0.0);
/// A'_2, q=0.5 alpha=0.3 beta=0.25 gamma=0.2 delta=0.15 eps=0.5
pub const COEF_A_UPPER_2: (f64, f64) = (1.6286966098951021, 0.0);
/// B'_2
pub const COEF_B_UPPER_2: (f64, f64) = (1.2745821441288942e-1, 0.0);
/// a'_2
pub const COEF_A_2: (f64, f64) = (6.0511842358675156e-2, 0.0);
/// b'^2_2
pub const COEF_B2_2: (f64, f64) = (2.0286791213447267e-1, 0.0);
/// A'_3, q=0.5 alpha=0.3 beta=0.25 gamma=0.2 delta=0.15 eps=0.5
pub const COEF_A_UPPER_3: (f64, f64) = (1.647565377433411, 0.0);
/// B'_3
pub const COEF_B_UPPER_3: (f64, f64) = (1.3857675023096374e-1, 0.0);
/// a'_3
pub const COEF_A_3: (f64, f64) = (3.0524539002291942e-2, 0.0);
/// b'^2_3
pub const COEF_B2_3: (f64, f64) = (2.2569948331145095e-1, 0.0);
/// P_4(0.3+0.2i) at the same parameters
pub const POLY_4: (f64, f64) = (3.7092364774104641e-2, -4.3091645846454969e-2);
/// eps = 1 P_5 at u = 1.3+0.4i
pub const AW_POLY_5: (f64, f64) = (4.681925839653685e-2, 8.9035267166015044e-2);
/// S1 at n = 3, u = 4+0.7i
pub const SOL_S1: (f64, f64) = (7.4210831126683836, 4.2419341832103465);
/// S2 at n = 3, u = 4+0.7i
pub const SOL_S2: (f64, f64) = (-1.6116627585424253e+5, -5.961150397097246e+4);
/// S3 at n = 3, u = 4+0.7i
pub const SOL_S3: (f64, f64) = (1.9354266138899531e-3, -1.1178522379371344e-3);
/// S4 at n = 3, u = 4+0.7i
pub const SOL_S4: (f64, f64) = (1.7719166443497111e-3, -1.0097716787324826e-3);
/// S6 at n = 3, u = 4+0.7i
pub const SOL_S6: (f64, f64) = (1.7719166443497111e-3, -1.0097716787324826e-3);
/// S5 at n = 3, u = 1.6+0.5i, q=0.5 alpha=2 beta=3 gamma=1.5 delta=2.5 eps=0.7
pub const SOL_S5: (f64, f64) = (1.107189708134531e+1, -9.0336965931531058);
/// CF(2), q=0.5 alpha=beta=gamma=delta=0.4 eps=0.5
pub const CF_Z2: (f64, f64) = (1.5101915891689269, 0.0);
/// CF(z) at u = 1.5+0.7i, same parameters
pub const CF_COMPLEX: (f64, f64) = (4.5354690580210723e-1, 3.0525103241914288e-1);
/// dw/dx at x = 0.25, same parameters
pub const DENSITY_DEFAULT_025: (f64, f64) = (8.5554112234651905e-1, 0.0);
/// dw/dx at x = -0.6, q=0.5 alpha=0.4 beta=0.35 gamma=0.3 delta=0.25 eps=0.5
pub const DENSITY_MIXED_M06: (f64, f64) = (6.5553846348497166e-2, 0.0);
/// closed-form Casoratian at u = 1.3+0.6i, same parameters
pub const WRONSKIAN_CLOSED: (f64, f64) = (1.6629777221285452e+1, 2.2294866164800277e+1);
/// G at u = exp(0.7i), same parameters
pub const G_FUNCTION: (f64, f64) = (1.7801888907142886, -2.3358073310621289);
/// 10phi9 with a=0.2 b=0.3 c=0.45+0.1i d=0.6 e=0.35 f=0.55, n = 3, g by balance
pub const TEN_PHI_NINE: (f64, f64) = (1.2560266792108829, -2.371236509999066e-1);
/// c1 for the same series
pub const REVERSAL_C1: (f64, f64) = (1.2945720166244352, 1.69026506213339e+1);
/// c2
pub const REVERSAL_C2: (f64, f64) = (1.6059234483356002, 2.4988552926521994);
/// c3
pub const REVERSAL_C3: (f64, f64) = (4.9087456443777595e+2, -7.3288842551309507e+1);
