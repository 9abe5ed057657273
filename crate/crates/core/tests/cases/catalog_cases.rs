// Hand-written classification cases, shared by the catalog tests and the
// acceptance run. Each row is (family, params, N, expected verdict).

use nquandle::catalog::Verdict;

pub const POSITIVE: &[(&str, &str, &[u32], Verdict)] = &[
    ("T_2,6", "", &[2, 4], Verdict::Finite),
    ("T_2,6", "", &[4, 2], Verdict::Finite),
    ("theta3", "", &[4, 3, 2], Verdict::Finite),
    ("theta3", "", &[2, 3, 4], Verdict::Finite),
    ("theta3", "", &[2, 2, 2], Verdict::Finite),
    ("theta3", "", &[2, 3, 2], Verdict::Finite),
    ("table1-r1c2", "k=3", &[2, 2], Verdict::Finite),
    ("table1-r1c3", "", &[5, 5, 5], Verdict::Finite),
    ("table1-r4c1", "k=1,p1=1,p2=1,q=3", &[2, 2, 2], Verdict::Finite),
    ("table1-r5c1", "k=-1,p1=1,p2=1,p3=1", &[2, 2], Verdict::Finite),
    ("table1-r5c3", "k=0,p1=1,p2=-1,p3=2", &[2, 2], Verdict::Finite),
    ("T_3,3", "", &[3, 2, 5], Verdict::Finite),
    ("T_2,4", "", &[3, 4], Verdict::Finite),
    ("T_2,4+C", "", &[2, 2, 3], Verdict::Finite),
    ("T_2,8", "", &[3, 2], Verdict::Finite),
    ("T_2,10", "", &[2, 3], Verdict::Finite),
    ("T_2,4", "", &[7, 2], Verdict::Finite),
    ("L_k", "k=-1", &[4, 3], Verdict::Finite),
    ("L_k", "k=2", &[3, 2, 2], Verdict::Finite),
    ("L_k", "k=3", &[2, 7], Verdict::Finite),
    ("L_k", "k=-2", &[2, 2, 4], Verdict::Finite),
    ("KT", "", &[3, 3, 2], Verdict::Finite),
    ("H1", "", &[3, 3, 2], Verdict::Finite),
    ("H2", "", &[3, 2, 2], Verdict::Finite),
    ("DH", "", &[2, 2, 2, 3, 2, 4], Verdict::Finite),
    ("knotted-K4", "", &[3, 3, 2, 2, 2, 2], Verdict::Finite),
    ("planar-K4", "", &[3, 5, 2, 2, 2, 2], Verdict::Finite),
    ("planar-K4", "", &[3, 2, 4, 2, 2, 3], Verdict::Finite),
    ("G", "k=2,m=3,n=5", &[2, 2, 3, 5, 2, 2], Verdict::Finite),
    ("unknot", "", &[7], Verdict::Finite),
    ("hopf", "", &[9, 2], Verdict::Finite),
];

pub const NEGATIVE: &[(&str, &str, &[u32], Verdict)] = &[
    ("T_2,6", "", &[2, 6], Verdict::Infinite),
    ("T_2,6", "", &[3, 3], Verdict::Unknown),
    ("theta3", "", &[3, 3, 3], Verdict::Unknown),
    ("theta3", "", &[6, 3, 2], Verdict::Unknown),
    ("theta3", "", &[2, 2, 7], Verdict::Unknown),
    ("table1-r1c2", "k=0", &[2, 2], Verdict::Unknown),
    ("table1-r1c2", "k=2", &[3, 3], Verdict::Unknown),
    ("table1-r1c3", "", &[6, 6], Verdict::Unknown),
    ("table1-r4c1", "k=-1,p1=1,p2=1,q=2", &[2, 2], Verdict::Unknown),
    ("table1-r5c1", "k=-1,p1=2,p2=0,p3=0", &[2, 2], Verdict::Unknown),
    ("table1-r5c3", "k=1,p1=1,p2=1,p3=1", &[3, 3], Verdict::Unknown),
    ("T_3,3", "", &[2, 3, 6], Verdict::Infinite),
    ("T_2,4", "", &[4, 5], Verdict::Infinite),
    ("T_2,4+C", "", &[2, 3, 2], Verdict::Unknown),
    ("T_2,8", "", &[2, 4], Verdict::Infinite),
    ("T_2,10", "", &[2, 5], Verdict::Infinite),
    ("L_k", "k=3", &[3, 2], Verdict::Infinite),
    ("L_k", "k=3", &[3, 3], Verdict::Unknown),
    ("L_k", "k=1", &[3, 6], Verdict::Infinite),
    ("L_k", "k=4", &[2, 3, 2], Verdict::Infinite),
    ("KT", "", &[2, 2, 2], Verdict::Unknown),
    ("H2", "", &[3, 3, 2], Verdict::Unknown),
    ("knotted-K4", "", &[2, 2, 2, 2, 2, 2], Verdict::Unknown),
    ("planar-K4", "", &[3, 6, 2, 2, 2, 2], Verdict::Unknown),
    ("G", "k=1,m=2,n=3", &[2, 2, 3, 3, 2, 2], Verdict::Unknown),
    ("hopf", "", &[1, 3], Verdict::NotApplicable),
];
