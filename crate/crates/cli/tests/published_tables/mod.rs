//! Tables transcribed from the source study: willingness-to-pay ratios
//! (RUM, RRM, RRM/RUM) and elasticities per courier (RUM, RRM, percent
//! difference). `None` marks a dash.

pub const WTP_TABLE: &[(&str, &str, [Option<f64>; 3])] = &[
    ("PD1", "Delivery service", [Some(2.097), Some(3.065), Some(1.462)]),
    ("PD2", "Delivery service", [Some(1.848), Some(4.741), Some(2.566)]),
    ("PD3", "Delivery service", [Some(0.586), Some(3.738), Some(6.380)]),
    ("PD4", "Delivery service", [Some(0.528), Some(1.020), Some(1.931)]),
    ("PD5", "Delivery service", [Some(0.130), Some(0.286), Some(2.212)]),
    ("PD7", "Delivery service", [Some(0.101), Some(0.363), Some(3.599)]),
    ("PD8", "Delivery service", [Some(0.097), Some(0.594), Some(6.129)]),
    ("PD1", "Reputation", [Some(0.094), Some(0.203), Some(2.154)]),
    ("PD2", "Reputation", [Some(0.102), Some(0.240), Some(2.338)]),
    ("PD3", "Reputation", [Some(0.054), Some(0.130), Some(2.406)]),
    ("PD4", "Reputation", [Some(0.028), Some(0.071), Some(2.535)]),
    ("PD5", "Reputation", [Some(0.009), Some(0.030), Some(3.134)]),
    ("PD7", "Reputation", [Some(0.009), Some(0.037), Some(4.096)]),
    ("PD8", "Reputation", [Some(0.009), Some(0.039), Some(4.170)]),
    ("PD1", "Tracking", [Some(0.090), Some(0.272), Some(3.035)]),
    ("PD2", "Tracking", [Some(0.106), Some(0.276), Some(2.605)]),
    ("PD3", "Tracking", [Some(0.056), Some(0.144), Some(2.582)]),
    ("PD4", "Tracking", [Some(0.039), Some(0.110), Some(2.845)]),
    ("PD5", "Tracking", [Some(0.009), Some(0.030), Some(3.320)]),
    ("PD7", "Tracking", [Some(0.008), Some(0.038), Some(4.718)]),
    ("PD8", "Tracking", [Some(0.007), Some(0.037), Some(4.971)]),
    ("PD1", "E-notification", [Some(0.129), Some(0.213), Some(1.653)]),
    ("PD2", "E-notification", [Some(0.123), Some(0.293), Some(2.385)]),
    ("PD3", "E-notification", [Some(0.044), Some(0.102), Some(2.310)]),
    ("PD4", "E-notification", [Some(0.026), Some(0.068), Some(2.662)]),
    ("PD5", "E-notification", [Some(0.006), Some(0.018), Some(3.204)]),
    ("PD7", "E-notification", [Some(0.006), Some(0.027), Some(4.528)]),
    ("PD8", "E-notification", [Some(0.006), Some(0.043), Some(7.751)]),
    ("PD1", "P-Time", [Some(0.063), Some(0.128), Some(2.029)]),
    ("PD2", "P-Time", [Some(0.058), Some(0.129), Some(2.201)]),
    ("PD3", "P-Time", [Some(0.052), Some(0.122), Some(2.329)]),
    ("PD4", "P-Time", [Some(0.056), Some(0.120), Some(2.125)]),
    ("PD5", "P-Time", [None, None, None]),
    ("PD7", "P-Time", [None, Some(0.119), None]),
    ("PD8", "P-Time", [None, Some(0.070), None]),
    ("PD1", "P-Location", [Some(0.135), None, None]),
    ("PD2", "P-Location", [None, None, None]),
    ("PD3", "P-Location", [Some(0.063), Some(0.141), Some(2.244)]),
    ("PD4", "P-Location", [Some(0.033), Some(0.090), Some(2.773)]),
    ("PD5", "P-Location", [Some(0.008), Some(0.025), Some(3.253)]),
    ("PD7", "P-Location", [Some(0.009), Some(0.044), Some(4.857)]),
    ("PD8", "P-Location", [Some(0.007), None, None]),
    ("PD1", "Tip", [None, None, None]),
    ("PD2", "Tip", [None, None, None]),
    ("PD3", "Tip", [None, None, None]),
    ("PD4", "Tip", [None, None, None]),
    ("PD5", "Tip", [Some(0.028), None, None]),
    ("PD7", "Tip", [Some(0.025), None, None]),
    ("PD8", "Tip", [None, None, None]),
    ("PD1", "Tip1", [Some(0.097), Some(0.210), Some(2.173)]),
    ("PD2", "Tip1", [Some(0.127), Some(0.259), Some(2.044)]),
    ("PD3", "Tip1", [Some(0.051), Some(0.122), Some(2.400)]),
    ("PD4", "Tip1", [Some(0.076), Some(0.171), Some(2.239)]),
    ("PD5", "Tip1", [None, None, None]),
    ("PD7", "Tip1", [None, None, None]),
    ("PD8", "Tip1", [None, None, None]),
    ("PD1", "Tip2", [Some(0.081), Some(0.191), Some(2.346)]),
    ("PD2", "Tip2", [Some(0.071), Some(0.138), Some(1.935)]),
    ("PD3", "Tip2", [Some(0.043), Some(0.107), Some(2.488)]),
    ("PD4", "Tip2", [Some(0.043), Some(0.095), Some(2.240)]),
    ("PD5", "Tip2", [None, None, None]),
    ("PD7", "Tip2", [None, None, None]),
    ("PD8", "Tip2", [None, None, None]),
    ("PD1", "Tip3", [Some(0.065), Some(0.130), Some(1.992)]),
    ("PD2", "Tip3", [Some(0.062), Some(0.112), Some(1.800)]),
    ("PD3", "Tip3", [Some(0.030), Some(0.060), Some(2.010)]),
    ("PD4", "Tip3", [Some(0.029), Some(0.057), Some(1.966)]),
    ("PD5", "Tip3", [None, None, None]),
    ("PD7", "Tip3", [None, None, None]),
    ("PD8", "Tip3", [None, None, None]),
];

/// RUM, RRM and percent difference for couriers C1 to C4.
pub type CourierRow = [[Option<f64>; 3]; 4];

pub const ELASTICITY_TABLE: &[(&str, &str, CourierRow)] = &[
    ("PD1", "SCost", [[Some(-0.632), Some(0.362), Some(274.703)], [Some(-0.625), Some(0.380), Some(264.412)], [Some(-0.050), Some(0.538), Some(109.268)], [Some(-1.003), Some(0.326), Some(407.666)]]),
    ("PD1", "DTime", [[Some(-0.506), Some(-1.713), Some(70.494)], [Some(-0.232), Some(-0.236), Some(1.653)], [Some(-0.067), Some(-0.091), Some(26.484)], [Some(-1.600), Some(-0.911), Some(-75.628)]]),
    ("PD1", "Reputation", [[Some(0.472), Some(1.161), Some(59.309)], [Some(0.447), Some(0.850), Some(47.435)], [Some(0.439), Some(0.588), Some(25.332)], [Some(0.885), Some(1.265), Some(30.080)]]),
    ("PD1", "Tracking", [[Some(0.236), Some(0.412), Some(42.746)], [Some(0.152), Some(0.217), Some(29.949)], [Some(0.110), Some(0.130), Some(15.355)], [Some(0.178), Some(0.168), Some(-6.444)]]),
    ("PD1", "E-notification", [[Some(0.151), Some(0.494), Some(69.528)], [Some(0.121), Some(0.323), Some(62.697)], [Some(0.095), Some(0.248), Some(61.724)], [Some(0.046), Some(0.281), Some(83.476)]]),
    ("PD1", "P-Time", [[Some(0.089), Some(0.171), Some(48.219)], [Some(0.350), Some(0.807), Some(56.633)], [Some(0.094), Some(0.154), Some(38.827)], [Some(0.255), Some(2.378), Some(89.279)]]),
    ("PD1", "P-Location", [[Some(0.156), None, None], [Some(0.062), None, None], [Some(0.141), None, None], [Some(0.113), None, None]]),
    ("PD1", "Tip", [[Some(0.503), Some(1.176), Some(57.211)], [Some(0.622), Some(1.170), Some(46.862)], [Some(0.714), Some(1.822), Some(60.799)], [None, None, None]]),
    ("PD2", "SCost", [[Some(-0.764), Some(-1.423), Some(46.311)], [Some(-0.791), Some(-1.429), Some(44.672)], [Some(-0.387), Some(-1.529), Some(74.697)], [Some(-0.996), Some(-1.435), Some(30.596)]]),
    ("PD2", "DTime", [[Some(-0.482), Some(-1.636), Some(70.546)], [Some(-0.210), Some(-0.198), Some(-6.212)], [Some(-0.063), Some(-0.076), Some(16.909)], [Some(-1.431), Some(-0.821), Some(-74.272)]]),
    ("PD2", "Reputation", [[Some(0.427), Some(0.936), Some(54.412)], [Some(0.394), Some(0.591), Some(33.299)], [Some(0.385), Some(0.429), Some(10.266)], [Some(0.721), Some(0.834), Some(13.606)]]),
    ("PD2", "Tracking", [[Some(0.198), Some(0.390), Some(49.179)], [Some(0.119), Some(0.164), Some(27.306)], [Some(0.093), Some(0.118), Some(20.681)], [Some(0.132), Some(0.131), Some(-0.992)]]),
    ("PD2", "E-notification", [[Some(0.156), Some(0.350), Some(55.317)], [Some(0.117), Some(0.189), Some(37.916)], [Some(0.093), Some(0.158), Some(41.098)], [Some(0.043), Some(0.141), Some(69.307)]]),
    ("PD2", "P-Time", [[Some(0.106), Some(0.178), Some(40.641)], [Some(0.357), Some(0.626), Some(42.990)], [Some(0.102), Some(0.138), Some(25.654)], [Some(0.241), Some(0.999), Some(75.906)]]),
    ("PD2", "Tip", [[Some(0.387), Some(0.977), Some(60.444)], [Some(0.662), Some(1.229), Some(46.148)], [Some(0.705), Some(1.711), Some(58.830)], [None, None, None]]),
    ("PD3", "SCost", [[Some(-1.366), Some(-0.656), Some(-108.216)], [Some(-1.458), Some(-0.661), Some(-120.645)], [Some(-0.369), Some(-0.840), Some(56.054)], [Some(-1.886), Some(-0.555), Some(-239.564)]]),
    ("PD3", "DTime", [[Some(-0.275), Some(-0.560), Some(50.964)], [Some(-0.126), Some(-0.141), Some(10.100)], [Some(-0.039), Some(-0.058), Some(33.505)], [Some(-0.789), Some(-0.624), Some(-26.342)]]),
    ("PD3", "Reputation", [[Some(0.495), Some(1.045), Some(52.674)], [Some(0.459), Some(0.808), Some(43.188)], [Some(0.445), Some(0.631), Some(29.472)], [Some(0.750), Some(1.024), Some(26.789)]]),
    ("PD3", "Tracking", [[Some(0.231), Some(0.445), Some(48.146)], [Some(0.135), Some(0.222), Some(39.225)], [Some(0.107), Some(0.237), Some(54.588)], [Some(0.139), Some(0.164), Some(15.633)]]),
    ("PD3", "E-notification", [[Some(0.275), Some(0.633), Some(56.624)], [Some(0.200), Some(0.325), Some(38.478)], [Some(0.165), Some(0.396), Some(58.264)], [Some(0.065), Some(0.118), Some(45.478)]]),
    ("PD3", "P-Time", [[Some(0.071), Some(0.198), Some(64.026)], [Some(0.241), Some(0.464), Some(48.050)], [Some(0.072), Some(0.168), Some(57.126)], [Some(0.154), Some(0.589), Some(73.824)]]),
    ("PD3", "P-Location", [[Some(-0.206), Some(-0.483), Some(57.279)], [Some(-0.077), Some(-0.128), Some(39.860)], [Some(-0.184), Some(-0.472), Some(60.991)], [Some(-0.132), Some(-0.540), Some(75.607)]]),
    ("PD3", "Tip", [[Some(0.514), Some(1.072), Some(52.070)], [Some(0.583), Some(0.986), Some(40.884)], [Some(0.785), Some(2.375), Some(66.954)], [None, None, None]]),
    ("PD4", "SCost", [[Some(-1.507), Some(-0.881), Some(-71.133)], [Some(-1.639), Some(-0.904), Some(-81.352)], [Some(-0.330), Some(-1.090), Some(69.761)], [Some(-1.705), Some(-0.668), Some(-155.256)]]),
    ("PD4", "DTime", [[Some(-0.223), Some(-0.469), Some(52.508)], [Some(-0.106), Some(-0.123), Some(13.599)], [Some(-0.030), Some(-0.049), Some(37.832)], [Some(-0.556), Some(-0.502), Some(-10.793)]]),
    ("PD4", "Reputation", [[Some(0.773), Some(1.722), Some(55.121)], [Some(0.739), Some(1.450), Some(49.024)], [Some(0.670), Some(0.952), Some(29.650)], [Some(0.995), Some(1.452), Some(31.499)]]),
    ("PD4", "Tracking", [[Some(0.285), Some(0.640), Some(55.408)], [Some(0.165), Some(0.303), Some(45.631)], [Some(0.122), Some(0.276), Some(55.806)], [Some(0.145), Some(0.164), Some(11.470)]]),
    ("PD4", "E-notification", [[Some(0.392), Some(0.919), Some(57.388)], [Some(0.288), Some(0.462), Some(37.616)], [Some(0.231), Some(0.577), Some(59.903)], [Some(0.069), Some(0.091), Some(24.642)]]),
    ("PD4", "P-Time", [[Some(0.056), Some(0.246), Some(77.289)], [Some(0.191), Some(0.487), Some(60.730)], [Some(0.054), Some(0.161), Some(66.168)], [Some(0.101), Some(0.387), Some(73.999)]]),
    ("PD4", "P-Location", [[Some(-0.327), Some(-0.727), Some(55.021)], [Some(-0.134), Some(-0.212), Some(36.882)], [Some(-0.286), Some(-0.703), Some(59.266)], [Some(-0.189), Some(-0.564), Some(66.489)]]),
    ("PD4", "Tip", [[Some(0.280), Some(0.779), Some(64.022)], [Some(0.478), Some(1.056), Some(54.730)], [Some(0.621), Some(2.154), Some(71.158)], [None, None, None]]),
    ("PD5", "SCost", [[Some(-2.501), Some(-3.059), Some(18.234)], [Some(-2.634), Some(-3.176), Some(17.071)], [Some(-0.941), Some(-2.896), Some(67.508)], [Some(-1.914), Some(-2.074), Some(7.730)]]),
    ("PD5", "DTime", [[Some(-0.070), Some(-0.174), Some(60.023)], [Some(-0.034), Some(-0.052), Some(34.043)], [Some(-0.011), Some(-0.021), Some(49.275)], [Some(-0.135), Some(-0.186), Some(27.805)]]),
    ("PD5", "Reputation", [[Some(0.755), Some(2.581), Some(70.764)], [Some(0.768), Some(2.471), Some(68.924)], [Some(0.696), Some(1.035), Some(32.737)], [Some(0.697), Some(1.037), Some(32.771)]]),
    ("PD5", "Tracking", [[Some(0.408), Some(1.656), Some(75.377)], [Some(0.235), Some(0.601), Some(60.872)], [Some(0.197), Some(1.068), Some(81.599)], [Some(0.158), Some(0.195), Some(19.231)]]),
    ("PD5", "E-notification", [[Some(0.590), Some(2.499), Some(76.378)], [Some(0.431), Some(0.772), Some(44.178)], [Some(0.361), Some(1.421), Some(74.632)], [Some(0.061), Some(0.082), Some(26.309)]]),
    ("PD5", "P-Location", [[Some(-0.457), Some(-1.842), Some(75.195)], [Some(-0.191), Some(-0.322), Some(40.807)], [Some(-0.434), Some(-2.137), Some(79.696)], [Some(-0.213), Some(-0.388), Some(45.063)]]),
    ("PD5", "Tip", [[Some(0.210), None, None], [Some(0.211), None, None], [Some(0.194), None, None], [None, None, None]]),
    ("PD6", "SCost", [[Some(-2.514), Some(-3.020), Some(16.753)], [Some(-2.632), Some(-3.231), Some(18.550)], [Some(-1.091), Some(-2.882), Some(62.134)], [Some(-1.967), Some(-2.095), Some(6.100)]]),
    ("PD6", "Reputation", [[Some(0.648), Some(2.293), Some(71.757)], [Some(0.686), Some(0.946), Some(27.516)], [Some(0.587), Some(0.933), Some(37.056)], [Some(0.612), Some(0.941), Some(35.002)]]),
    ("PD6", "Tracking", [[Some(0.430), Some(1.646), Some(73.869)], [Some(0.257), Some(0.727), Some(64.598)], [Some(0.204), Some(0.371), Some(45.008)], [Some(0.170), Some(0.210), Some(19.163)]]),
    ("PD6", "E-notification", [[Some(0.480), Some(1.923), Some(75.029)], [Some(0.368), Some(0.676), Some(45.598)], [Some(0.297), Some(1.233), Some(75.937)], [Some(0.051), Some(0.067), Some(24.739)]]),
    ("PD6", "P-Location", [[Some(-0.405), Some(-1.639), Some(75.284)], [Some(-0.169), Some(-0.295), Some(42.804)], [Some(-0.381), Some(-1.810), Some(78.931)], [Some(-0.192), Some(-0.311), Some(38.360)]]),
    ("PD6", "Tip", [[Some(0.219), None, None], [Some(0.229), None, None], [Some(0.202), None, None], [None, None, None]]),
    ("PD7", "SCost", [[Some(-2.138), Some(-2.186), Some(2.195)], [Some(-2.300), Some(-2.342), Some(1.793)], [Some(-0.143), Some(-2.333), Some(93.867)], [Some(-1.844), Some(-1.476), Some(-24.975)]]),
    ("PD7", "DTime", [[Some(-0.080), Some(-0.265), Some(69.785)], [Some(-0.041), Some(-0.081), Some(49.444)], [Some(-0.011), Some(-0.031), Some(65.176)], [Some(-0.159), Some(-0.280), Some(43.082)]]),
    ("PD7", "Reputation", [[Some(0.884), Some(2.596), Some(65.949)], [Some(0.884), Some(2.565), Some(65.554)], [Some(0.729), Some(1.179), Some(38.155)], [Some(0.842), Some(1.346), Some(37.467)]]),
    ("PD7", "Tracking", [[Some(0.510), Some(1.526), Some(66.575)], [Some(0.299), Some(0.737), Some(59.449)], [Some(0.203), Some(0.730), Some(72.247)], [Some(0.204), Some(0.243), Some(16.097)]]),
    ("PD7", "E-notification", [[Some(0.617), Some(1.776), Some(65.240)], [Some(0.478), Some(0.923), Some(48.163)], [Some(0.360), Some(1.387), Some(74.008)], [Some(0.068), Some(0.086), Some(20.468)]]),
    ("PD7", "P-Time", [[None, Some(0.219), None], [None, Some(0.437), None], [None, Some(0.160), None], [None, Some(0.133), None]]),
    ("PD7", "P-Location", [[Some(-0.431), Some(-1.135), Some(62.035)], [Some(-0.191), Some(-0.325), Some(41.316)], [Some(-0.371), Some(-1.388), Some(73.258)], [Some(-0.212), Some(-0.409), Some(48.103)]]),
    ("PD7", "Tip", [[Some(0.299), None, None], [Some(0.305), None, None], [Some(0.254), None, None], [None, None, None]]),
    ("PD8", "SCost", [[Some(-2.146), Some(-1.638), Some(-30.989)], [Some(-2.368), Some(-1.818), Some(-30.254)], [Some(-0.194), Some(-2.019), Some(90.384)], [Some(-1.785), Some(-1.014), Some(-75.927)]]),
    ("PD8", "DTime", [[Some(-0.062), Some(-0.173), Some(64.067)], [Some(-0.032), Some(-0.066), Some(51.205)], [Some(-0.009), Some(-0.025), Some(62.992)], [Some(-0.123), Some(-0.224), Some(45.094)]]),
    ("PD8", "Reputation", [[Some(0.677), Some(1.705), Some(60.285)], [Some(0.711), Some(2.266), Some(68.618)], [Some(0.625), Some(0.953), Some(34.393)], [Some(0.640), Some(0.963), Some(33.551)]]),
    ("PD8", "Tracking", [[Some(0.432), Some(1.055), Some(59.064)], [Some(0.265), Some(0.680), Some(61.091)], [Some(0.200), Some(0.652), Some(69.387)], [Some(0.171), Some(0.191), Some(10.658)]]),
    ("PD8", "E-notification", [[Some(0.515), Some(0.800), Some(35.629)], [Some(0.415), Some(0.527), Some(21.317)], [Some(0.331), Some(0.946), Some(65.015)], [Some(0.059), Some(0.045), Some(-31.180)]]),
    ("PD8", "P-Time", [[None, Some(0.270), None], [None, Some(0.686), None], [None, Some(0.209), None], [None, Some(0.119), None]]),
    ("PD8", "P-Location", [[Some(-0.421), None, None], [Some(-0.193), None, None], [Some(-0.402), None, None], [Some(-0.203), None, None]]),
];
