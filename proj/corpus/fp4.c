// Stand-in case: the else branch is unreachable for i < 99.
int main() {
  int size = 100;
  int arr[size];

#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 99; i++) {
    if (i < 100) {
      arr[i] = i;
    } else {
      arr[0] = arr[i] + 1;
    }
  }
}
