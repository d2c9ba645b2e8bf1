// Neighbouring iterations overlap in arr[i+1 .. i+3].
int arr[64];

int main() {
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 32; i++) {
    for (int k = 0; k < 4; k++) {
      arr[i + k] = i;
    }
  }
}
