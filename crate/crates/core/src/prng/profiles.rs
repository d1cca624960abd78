//! Fixed function tables of the built-in generator profiles.
//!
//! Table E has a 14-entry gap (inputs 42..=55) in its only published form.
//! The values filled in are the unique ones that keep the map a removal of a
//! single Hamiltonian cycle when the gap is one contiguous run.

pub(super) const TABLE_A: [u32; 16] = [13, 10, 9, 14, 3, 11, 1, 12, 15, 4, 7, 5, 2, 6, 0, 8];

pub(super) const TABLE_B: [u32; 32] = [
    29, 22, 21, 30, 19, 27, 24, 28, 7, 20, 5, 4, 23, 26, 25, 17, 31, 12, 15, 8, 10, 14, 13, 9, 3, 2, 1, 6, 11, 18, 0,
    16,
];

pub(super) const TABLE_C: [u32; 64] = [
    55, 60, 45, 56, 43, 62, 61, 40, 53, 50, 52, 36, 59, 34, 57, 49, 15, 14, 47, 46, 11, 58, 33, 44, 7, 54, 39, 37, 51,
    2, 32, 48, 63, 26, 25, 30, 19, 27, 17, 28, 31, 20, 23, 21, 18, 22, 16, 24, 13, 12, 29, 8, 10, 42, 41, 0, 5, 38, 4,
    6, 35, 3, 9, 1,
];

pub(super) const TABLE_D: [u32; 128] = [
    111, 94, 93, 116, 122, 114, 125, 88, 87, 126, 119, 84, 123, 98, 81, 120, 109, 78, 105, 110, 99, 107, 104, 108, 101,
    70, 117, 96, 103, 102, 113, 64, 79, 30, 95, 124, 83, 91, 121, 24, 85, 118, 69, 20, 115, 90, 17, 112, 77, 76, 73,
    12, 74, 106, 72, 8, 7, 6, 71, 100, 75, 82, 97, 0, 127, 54, 57, 62, 51, 59, 56, 48, 53, 38, 37, 60, 55, 58, 33, 49,
    63, 44, 47, 40, 42, 46, 45, 41, 35, 34, 39, 52, 43, 50, 32, 36, 29, 28, 61, 92, 26, 18, 89, 25, 19, 86, 23, 4, 27,
    2, 16, 80, 31, 10, 15, 14, 3, 11, 13, 9, 5, 22, 21, 68, 67, 66, 65, 1,
];

pub(super) const TABLE_E: [u32; 256] = [
    223, 250, 249, 254, 187, 234, 241, 252, 183, 230, 229, 180, 227, 178, 240, 248, 237, 236, 253, 172, 251, 238, 201,
    224, 247, 166, 165, 244, 163, 242, 161, 225, 215, 220, 205, 216, 218, 222, 221, 208, 213, 210, 212, 214, 219, 211,
    217, 209, 239, 142, 207, 206, 139, 203, 193, 136, 135, 196, 199, 132, 194, 130, 129, 200, 159, 186, 185, 190, 59,
    170, 177, 188, 191, 246, 245, 52, 243, 50, 176, 184, 173, 46, 189, 174, 235, 42, 233, 232, 231, 38, 37, 228, 35,
    226, 33, 168, 151, 156, 141, 152, 154, 158, 157, 144, 149, 146, 148, 150, 155, 147, 153, 145, 175, 14, 143, 204,
    11, 202, 169, 8, 7, 198, 197, 4, 195, 2, 1, 192, 255, 124, 109, 120, 107, 126, 125, 112, 103, 114, 116, 100, 123,
    98, 121, 113, 79, 106, 111, 110, 75, 122, 97, 108, 71, 118, 117, 68, 115, 66, 96, 104, 127, 90, 89, 94, 83, 91, 81,
    92, 95, 84, 87, 85, 82, 86, 80, 88, 77, 76, 93, 72, 74, 78, 105, 64, 69, 102, 101, 70, 99, 67, 73, 65, 55, 60, 45,
    56, 51, 62, 61, 48, 119, 182, 181, 53, 179, 54, 57, 49, 15, 44, 47, 40, 171, 58, 9, 32, 167, 6, 5, 164, 3, 162, 41,
    160, 63, 26, 25, 30, 19, 27, 17, 28, 31, 20, 23, 21, 18, 22, 16, 24, 13, 10, 29, 140, 43, 138, 137, 12, 39, 134,
    133, 36, 131, 34, 0, 128,
];
